/** Display-only re-parse of the service's `.prc` circuit text.
 *
 * This recovers just enough structure to draw gates: a label, a target line,
 * and control markers. No circuit semantics or metrics are computed here;
 * those always come from the service.
 */
const ROOT_LABELS = {
    "z 1/4": "T",
    "z -1/4": "T†",
    "z 1/2": "S",
    "z -1/2": "S†",
    "x 1/2": "V",
    "x -1/2": "V†",
    "x 1/4": "W",
    "x -1/4": "W†",
    "x 1/1": "X",
    "y 1/1": "Y",
    "z 1/1": "Z",
};
function rootLabel(axis, exp) {
    return ROOT_LABELS[`${axis} ${exp}`] ?? `${axis.toUpperCase()}^${exp}`;
}
function parseControls(parts, from) {
    const controls = [];
    for (let i = from; i + 1 < parts.length; i += 2) {
        if (parts[i] !== "ctrl") {
            throw new Error(`unexpected token ${parts[i]} in gate line`);
        }
        const spec = parts[i + 1];
        controls.push({ line: Number(spec.slice(1)), positive: spec.startsWith("+") });
    }
    return controls;
}
export function parsePrc(text) {
    const lines = text.split("\n").filter((l) => l.trim().length > 0);
    const header = lines[0];
    if (header === undefined || !header.startsWith("qubits ")) {
        throw new Error("circuit text must start with a qubits header");
    }
    const n = Number(header.slice("qubits ".length));
    const gates = [];
    for (const line of lines.slice(1)) {
        const parts = line.trim().split(/\s+/);
        const kind = parts[0];
        if (kind === "root") {
            gates.push({
                label: rootLabel(parts[1], parts[2]),
                target: Number(parts[3]),
                controls: parseControls(parts, 4),
            });
        }
        else if (kind === "trans") {
            const pair = [parts[1], parts[2]].sort().join("");
            gates.push({
                label: pair === "xz" ? "H" : `ρ(${parts[1]},${parts[2]})`,
                target: Number(parts[3]),
                controls: parseControls(parts, 4),
            });
        }
        else if (kind === "neg") {
            gates.push({
                label: `N${parts[1]}(${parts[2]})`,
                target: Number(parts[3]),
                controls: parseControls(parts, 4),
            });
        }
        else {
            throw new Error(`unknown gate form ${kind}`);
        }
    }
    return { n, gates };
}
