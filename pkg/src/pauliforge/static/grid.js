/** Gate grid layout: rows are qubit lines, columns are the stage indices the
 * service reports per gate. Gates the service scheduled in one stage share a
 * column, so the drawing agrees with the depth badge by construction.
 */
export function buildGrid(circuit, stages) {
    if (stages.length !== circuit.gates.length) {
        throw new Error(`stage list length ${stages.length} does not match ${circuit.gates.length} gates`);
    }
    const cells = circuit.gates.map((gate, i) => ({
        gateIndex: i,
        column: stages[i],
        gate,
    }));
    return {
        rows: circuit.n,
        columns: stages.length === 0 ? 0 : Math.max(...stages),
        cells,
    };
}
/** Lines a cell occupies when drawn, from its topmost to bottommost wire. */
export function cellSpan(cell) {
    const lines = [cell.gate.target, ...cell.gate.controls.map((c) => c.line)];
    return [Math.min(...lines), Math.max(...lines)];
}
