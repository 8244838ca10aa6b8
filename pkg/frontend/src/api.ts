/** Thin typed client for the session service JSON API.
 *
 * The fetch implementation is injectable so tests can run against a mocked
 * transport; everything else is plain request/response plumbing with shape
 * checks on the way in.
 */

export interface Span {
  line: number;
  col_start: number;
  col_end: number;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  span?: Span;
}

export class ServiceError extends Error {
  constructor(readonly status: number, readonly body: ApiErrorBody) {
    super(`${body.code}: ${body.message}`);
    this.name = "ServiceError";
  }
}

export interface StatsDelta {
  depth: number;
  t_depth: number;
  gate_count: number;
}

export interface Stats extends StatsDelta {
  counts: Record<string, number>;
  controlled_t_warning: boolean;
}

export interface CircuitPayload {
  prc: string;
  n: number;
  stages: number[];
}

export interface SessionState {
  stats: Stats;
  circuit: CircuitPayload;
  equivalent: boolean;
}

export interface OpenResponse extends SessionState {
  id: string;
}

export interface WireStep {
  rule: string;
  anchor: number;
  params?: Record<string, unknown>;
}

export interface MovePreview extends WireStep {
  delta: StatsDelta;
}

export interface Script {
  name: string;
  initial: string;
  steps: WireStep[];
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

function isRecord(x: unknown): x is Record<string, unknown> {
  return typeof x === "object" && x !== null && !Array.isArray(x);
}

function need(cond: boolean, what: string): void {
  if (!cond) {
    throw new Error(`malformed service response: ${what}`);
  }
}

function checkStats(x: unknown): Stats {
  need(isRecord(x), "stats object");
  const s = x as Record<string, unknown>;
  for (const key of ["depth", "t_depth", "gate_count"]) {
    need(typeof s[key] === "number", `numeric stats.${key}`);
  }
  need(isRecord(s.counts), "stats.counts");
  return s as unknown as Stats;
}

function checkCircuit(x: unknown): CircuitPayload {
  need(isRecord(x), "circuit object");
  const c = x as Record<string, unknown>;
  need(typeof c.prc === "string", "circuit.prc text");
  need(typeof c.n === "number", "circuit.n");
  need(Array.isArray(c.stages) && c.stages.every((v) => typeof v === "number"),
       "circuit.stages");
  return c as unknown as CircuitPayload;
}

function checkState(x: unknown): SessionState {
  need(isRecord(x), "session state");
  const s = x as Record<string, unknown>;
  return {
    stats: checkStats(s.stats),
    circuit: checkCircuit(s.circuit),
    equivalent: s.equivalent === true,
  };
}

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    const body: unknown = await response.json();
    if (!response.ok) {
      const err = isRecord(body) && typeof body.code === "string"
        ? (body as unknown as ApiErrorBody)
        : { code: "unknown", message: JSON.stringify(body) };
      throw new ServiceError(response.status, err);
    }
    return body;
  }

  private post(path: string, payload?: unknown): Promise<unknown> {
    return this.request(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(payload ?? {}),
    });
  }

  async openSession(circuit: string): Promise<OpenResponse> {
    const body = await this.post("/sessions", { circuit });
    need(isRecord(body) && typeof body.id === "string", "session id");
    const rec = body as Record<string, unknown>;
    return { id: rec.id as string, ...checkState(body) };
  }

  async moves(id: string): Promise<MovePreview[]> {
    const body = await this.request(`/sessions/${id}/moves`);
    need(Array.isArray(body), "move list");
    return body as MovePreview[];
  }

  async apply(id: string, step: WireStep): Promise<SessionState> {
    return checkState(await this.post(`/sessions/${id}/apply`, step));
  }

  async undo(id: string): Promise<SessionState> {
    return checkState(await this.post(`/sessions/${id}/undo`));
  }

  async redo(id: string): Promise<SessionState> {
    return checkState(await this.post(`/sessions/${id}/redo`));
  }

  async builtins(): Promise<Record<string, string>> {
    const body = await this.request("/builtins");
    need(isRecord(body), "builtins map");
    return body as Record<string, string>;
  }

  async scripts(): Promise<string[]> {
    const body = await this.request("/scripts");
    need(Array.isArray(body), "script list");
    return body as string[];
  }

  async script(name: string): Promise<Script> {
    const body = await this.request(`/scripts/${name}`);
    need(
      isRecord(body) && typeof body.initial === "string" && Array.isArray(body.steps),
      "script payload",
    );
    return body as unknown as Script;
  }
}
