/** Browser entry point: wires the view model to a small DOM layout. */

import { ApiClient, MovePreview } from "./api.js";
import { cellSpan } from "./grid.js";
import { ExplorerViewModel } from "./viewmodel.js";

const client = new ApiClient("");
const model = new ExplorerViewModel(client);

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderBadges(host: HTMLElement): void {
  host.replaceChildren();
  const b = model.state.badges;
  const eq = el("span", `badge badge-eq ${b.equivalence}`,
    b.equivalence === "green" ? "equivalent" : "unverified");
  host.append(
    eq,
    el("span", "badge", `depth ${b.depth}`),
    el("span", "badge badge-t", `T-depth ${b.tDepth}`),
    el("span", "badge", `${b.gateCount} gates`),
  );
  if (b.controlledTWarning) {
    host.append(el("span", "badge badge-warn", "controlled quarter roots excluded from T-depth"));
  }
}

function renderGrid(host: HTMLElement): void {
  host.replaceChildren();
  const grid = model.state.grid;
  host.style.setProperty("--columns", String(Math.max(grid.columns, 1)));
  host.style.setProperty("--rows", String(Math.max(grid.rows, 1)));
  for (let line = 0; line < grid.rows; line++) {
    const wire = el("div", "wire");
    wire.style.gridRow = String(line + 1);
    host.append(wire);
  }
  for (const cell of grid.cells) {
    const [top, bottom] = cellSpan(cell);
    const box = el("div", "gate", cell.gate.label);
    box.style.gridColumn = String(cell.column);
    box.style.gridRow = `${top + 1} / ${bottom + 2}`;
    box.title = `gate ${cell.gateIndex}`;
    for (const c of cell.gate.controls) {
      box.append(el("span", "ctrl", `${c.positive ? "●" : "○"}${c.line}`));
    }
    host.append(box);
  }
}

function describeDelta(m: MovePreview): string {
  const parts: string[] = [];
  for (const [key, label] of [["depth", "d"], ["t_depth", "T"], ["gate_count", "g"]] as const) {
    const v = m.delta[key];
    if (v !== 0) parts.push(`${label}${v > 0 ? "+" : ""}${v}`);
  }
  return parts.length ? ` (${parts.join(", ")})` : "";
}

function renderMoves(host: HTMLElement): void {
  host.replaceChildren();
  for (const move of model.state.moves) {
    const button = el("button", "move", `${move.rule} @ ${move.anchor}${describeDelta(move)}`);
    button.disabled = model.state.busy;
    button.addEventListener("click", () => {
      void run(model.applyStep({ rule: move.rule, anchor: move.anchor, params: move.params }));
    });
    const item = el("li");
    item.append(button);
    host.append(item);
  }
}

function renderAll(): void {
  renderBadges(document.getElementById("badges")!);
  renderGrid(document.getElementById("grid")!);
  renderMoves(document.getElementById("moves")!);
  document.getElementById("breadcrumb")!.textContent =
    model.state.breadcrumb.join(" › ");
  document.getElementById("notice")!.textContent = model.state.notice ?? "";
}

async function run(work: Promise<void>): Promise<void> {
  try {
    await work;
  } catch (err) {
    model.state.notice = err instanceof Error ? err.message : String(err);
  }
  renderAll();
}

async function setup(): Promise<void> {
  const select = document.getElementById("builtin") as HTMLSelectElement;
  const builtins = await client.builtins();
  for (const name of Object.keys(builtins)) {
    select.append(new Option(name, name));
  }
  document.getElementById("load")!.addEventListener("click", () => {
    void run(model.loadBuiltin(select.value));
  });
  document.getElementById("undo")!.addEventListener("click", () => {
    void run(model.undo());
  });
  document.getElementById("redo")!.addEventListener("click", () => {
    void run(model.redo());
  });
  const scripts = document.getElementById("script") as HTMLSelectElement;
  for (const name of await client.scripts()) {
    scripts.append(new Option(name, name));
  }
  document.getElementById("replay")!.addEventListener("click", () => {
    void run(model.replayScript(scripts.value));
  });
}

void setup();
