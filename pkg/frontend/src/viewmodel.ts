/** Session-backed view state. The model never computes circuit semantics:
 * circuits are the service's `.prc` echo re-parsed for drawing, badges mirror
 * the service-reported stats, and the move list is whatever the service says
 * is currently applicable.
 */

import {
  ApiClient,
  MovePreview,
  ServiceError,
  SessionState,
  WireStep,
} from "./api.js";
import { buildGrid, Grid } from "./grid.js";
import { parsePrc } from "./prc.js";

export interface Badges {
  equivalence: "green" | "unknown";
  depth: number;
  tDepth: number;
  gateCount: number;
  controlledTWarning: boolean;
}

export interface ExplorerState {
  sessionId: string | null;
  grid: Grid;
  prc: string;
  moves: MovePreview[];
  badges: Badges;
  breadcrumb: string[];
  busy: boolean;
  notice: string | null;
}

const EMPTY_BADGES: Badges = {
  equivalence: "unknown",
  depth: 0,
  tDepth: 0,
  gateCount: 0,
  controlledTWarning: false,
};

export class ExplorerViewModel {
  state: ExplorerState = {
    sessionId: null,
    grid: { rows: 0, columns: 0, cells: [] },
    prc: "",
    moves: [],
    badges: EMPTY_BADGES,
    breadcrumb: [],
    busy: false,
    notice: null,
  };

  constructor(private readonly client: ApiClient) {}

  private render(state: SessionState): void {
    this.state.prc = state.circuit.prc;
    this.state.grid = buildGrid(parsePrc(state.circuit.prc), state.circuit.stages);
    this.state.badges = {
      equivalence: state.equivalent ? "green" : "unknown",
      depth: state.stats.depth,
      tDepth: state.stats.t_depth,
      gateCount: state.stats.gate_count,
      controlledTWarning: state.stats.controlled_t_warning,
    };
  }

  /** Runs one mutation at a time; controls stay disabled while busy. */
  private async mutate<T>(work: () => Promise<T>): Promise<T> {
    if (this.state.busy) {
      throw new Error("a request is already in flight");
    }
    this.state.busy = true;
    try {
      return await work();
    } finally {
      this.state.busy = false;
    }
  }

  async openCircuit(prc: string, label: string): Promise<void> {
    await this.mutate(async () => {
      const opened = await this.client.openSession(prc);
      this.state.sessionId = opened.id;
      this.state.breadcrumb = [label];
      this.state.notice = null;
      this.render(opened);
      this.state.moves = await this.client.moves(opened.id);
    });
  }

  async loadBuiltin(name: string): Promise<void> {
    const builtins = await this.client.builtins();
    const prc = builtins[name];
    if (prc === undefined) {
      throw new ServiceError(404, {
        code: "unknown-builtin",
        message: `no builtin named ${name}`,
      });
    }
    await this.openCircuit(prc, name);
  }

  private requireSession(): string {
    if (this.state.sessionId === null) {
      throw new Error("no session open");
    }
    return this.state.sessionId;
  }

  async applyStep(step: WireStep): Promise<void> {
    const id = this.requireSession();
    await this.mutate(async () => {
      try {
        const state = await this.client.apply(id, step);
        this.render(state);
        this.state.breadcrumb.push(`${step.rule}@${step.anchor}`);
        this.state.notice = null;
      } catch (err) {
        if (err instanceof ServiceError && err.status === 409) {
          // stale anchor: refresh what is actually applicable and tell the user
          this.state.notice = `move no longer applies: ${err.body.message}`;
        } else {
          throw err;
        }
      }
      this.state.moves = await this.client.moves(id);
    });
  }

  async undo(): Promise<void> {
    const id = this.requireSession();
    await this.mutate(async () => {
      this.render(await this.client.undo(id));
      this.state.breadcrumb.push("undo");
      this.state.moves = await this.client.moves(id);
    });
  }

  async redo(): Promise<void> {
    const id = this.requireSession();
    await this.mutate(async () => {
      this.render(await this.client.redo(id));
      this.state.breadcrumb.push("redo");
      this.state.moves = await this.client.moves(id);
    });
  }

  /** Replays a recorded derivation step by step through the session API. */
  async replayScript(name: string): Promise<void> {
    const script = await this.client.script(name);
    await this.openCircuit(script.initial, `script:${name}`);
    for (const step of script.steps) {
      await this.applyStep(step);
      if (this.state.notice !== null) {
        throw new Error(`replay stalled at ${step.rule}@${step.anchor}: ${this.state.notice}`);
      }
    }
  }
}
