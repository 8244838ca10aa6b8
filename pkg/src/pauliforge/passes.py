"""Scripted derivation pipelines and whole-circuit mapping passes.

A DerivationScript is an ordered list of steps over an initial circuit. Steps
are either catalog rewrites or one of three locally verified manual moves:
swapping two commuting adjacent gates, inserting a self-inverse gate twice,
and conjugating a segment by a pair of 3-CNOT swap triples (which relabels
the two swapped lines inside the segment). Execution re-checks equivalence
with the initial circuit after every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .algebra import EPS, X_AXIS, Y_AXIS, Z_AXIS
from .circuit import Circuit, Gate, PauliRoot, Translation
from .rules import RewriteStep, RuleParams, apply as apply_rule, applicable
from .semantics import equivalent, gate_unitary
from .text import parse


class ScriptError(RuntimeError):
    pass


@dataclass(frozen=True)
class ScriptStep:
    kind: str  # "rule" | "swap_adjacent" | "insert_pair" | "swap_conjugate"
    rewrite: RewriteStep | None = None
    index: int | None = None
    index2: int | None = None
    gate: Gate | None = None
    note: str = ""

    def describe(self) -> str:
        if self.kind == "rule":
            return f"{self.rewrite.rule}@{self.rewrite.anchor}"
        if self.kind == "swap_adjacent":
            return f"swap_adjacent@{self.index}"
        if self.kind == "insert_pair":
            return f"insert_pair@{self.index}"
        return f"swap_conjugate@{self.index}..{self.index2}"


@dataclass(frozen=True)
class DerivationScript:
    name: str
    initial: Circuit
    steps: tuple[ScriptStep, ...]
    expected_final: Circuit | None = None


def _is_cx(g: Gate) -> bool:
    return (
        isinstance(g.op, PauliRoot)
        and g.op.axis == X_AXIS
        and g.op.exp == 1
        and len(g.controls) == 1
        and g.controls[0][1]
    )


def _swap_triple_lines(gates: tuple[Gate, ...]) -> tuple[int, int] | None:
    """The two lines exchanged by a CX(a,b); CX(b,a); CX(a,b) triple."""
    if len(gates) != 3 or not all(_is_cx(g) for g in gates):
        return None
    a, b = gates[0].controls[0][0], gates[0].target
    if gates[1].controls[0][0] != b or gates[1].target != a:
        return None
    if gates[2] != gates[0]:
        return None
    return a, b


def apply_step(c: Circuit, step: ScriptStep) -> Circuit:
    """Applies one script step with its local verification; raises
    ScriptError when the step does not apply."""
    if step.kind == "rule":
        ok, diag = applicable(step.rewrite.rule, c, step.rewrite.anchor, step.rewrite.params)
        if not ok:
            raise ScriptError(f"step {step.describe()}: {diag}")
        return apply_rule(step.rewrite, c)
    if step.kind == "swap_adjacent":
        i = step.index
        if not 0 <= i < len(c.gates) - 1:
            raise ScriptError(f"step {step.describe()}: index out of range")
        u1 = gate_unitary(c.gates[i], c.n)
        u2 = gate_unitary(c.gates[i + 1], c.n)
        if np.max(np.abs(u1 @ u2 - u2 @ u1)) > EPS:
            raise ScriptError(f"step {step.describe()}: gates do not commute")
        return c.replace(i, i + 2, (c.gates[i + 1], c.gates[i]))
    if step.kind == "insert_pair":
        i = step.index
        if not 0 <= i <= len(c.gates):
            raise ScriptError(f"step {step.describe()}: index out of range")
        u = gate_unitary(step.gate, c.n)
        if np.max(np.abs(u @ u - np.eye(u.shape[0]))) > EPS:
            raise ScriptError(f"step {step.describe()}: gate is not self-inverse")
        return c.replace(i, i, (step.gate, step.gate))
    if step.kind == "swap_conjugate":
        i, j = step.index, step.index2
        if not (0 <= i and i + 3 <= j and j + 3 <= len(c.gates)):
            raise ScriptError(f"step {step.describe()}: indices out of range")
        lines1 = _swap_triple_lines(c.gates[i : i + 3])
        lines2 = _swap_triple_lines(c.gates[j : j + 3])
        if lines1 is None or lines2 is None or set(lines1) != set(lines2):
            raise ScriptError(f"step {step.describe()}: windows are not matching swap triples")
        a, b = lines1
        perm = {a: b, b: a}
        middle = tuple(g.relabeled(perm) for g in c.gates[i + 3 : j])
        return c.replace(i, j + 3, middle)
    raise ScriptError(f"unknown step kind {step.kind!r}")


def run_script(script: DerivationScript, verify: bool = True) -> list[Circuit]:
    """Executes all steps; returns every circuit from the initial to the final.

    With verify on (the default), equivalence with the initial circuit is
    re-checked after every step and a failure aborts with a ScriptError.
    """
    current = script.initial
    out = [current]
    for k, step in enumerate(script.steps):
        current = apply_step(current, step)
        if verify:
            ok, _ = equivalent(script.initial, current)
            if not ok:
                raise ScriptError(
                    f"{script.name}: step {k} ({step.describe()}) broke equivalence"
                )
        out.append(current)
    if script.expected_final is not None and current.gates != script.expected_final.gates:
        raise ScriptError(f"{script.name}: final circuit differs from the expected one")
    return out


# --- step constructors ------------------------------------------------------


def rule_step(rule: str, anchor: int, note: str = "", **params) -> ScriptStep:
    return ScriptStep("rule", rewrite=RewriteStep(rule, anchor, RuleParams(**params)), note=note)


def swap_step(index: int, note: str = "") -> ScriptStep:
    return ScriptStep("swap_adjacent", index=index, note=note)


def insert_pair_step(index: int, gate: Gate, note: str = "") -> ScriptStep:
    return ScriptStep("insert_pair", index=index, gate=gate, note=note)


def swap_conjugate_step(i: int, j: int, note: str = "") -> ScriptStep:
    return ScriptStep("swap_conjugate", index=i, index2=j, note=note)


# --- builtin circuits -------------------------------------------------------


_BUILTIN_TEXT = {
    "barenco-toffoli": """\
qubits 3
v 2 ctrl +1
cx 0 1
vdg 2 ctrl +1
cx 0 1
v 2 ctrl +0
""",
    "amy-toffoli": """\
qubits 3
h 2
t 0
t 1
t 2
cx 1 0
cx 2 1
cx 0 2
tdg 1
cx 0 1
tdg 0
tdg 1
t 2
cx 2 1
cx 0 2
cx 1 0
h 2
""",
    "peres-pair-adder": """\
qubits 4
x 3 ctrl +0 ctrl +1
cx 0 1
x 3 ctrl +1 ctrl +2
cx 1 2
""",
    "full-adder-final": """\
qubits 4
h 3
cx 2 3
t 0
t 1
t 2
tdg 3
cx 0 1
cx 2 3
cx 3 0
cx 1 2
cx 0 1
cx 2 3
tdg 0
tdg 1
tdg 2
t 3
cx 0 1
cx 2 3
s 3
cx 3 0
h 3
""",
}

BUILTIN_NAMES = ("barenco-toffoli", "amy-toffoli", "peres-pair-adder", "full-adder-final", "w-adder")


def builtin(name: str) -> Circuit:
    if name == "w-adder":
        return translate_library(builtin("full-adder-final"), X_AXIS)
    if name not in _BUILTIN_TEXT:
        raise KeyError(f"unknown builtin {name!r}")
    return parse(_BUILTIN_TEXT[name])


# --- recorded derivations ---------------------------------------------------

_AXIS_BY_LETTER = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}


def _decode_steps(text: str, n: int) -> tuple[ScriptStep, ...]:
    """One step per line: `swap I`, `pair I <gate>`, or `<Rule> I [opt ...]`
    with options b=<axis>, dir=back, var=<v>, line=<l>, split=<m/k>."""
    steps = []
    for raw in text.strip().split("\n"):
        parts = raw.split()
        head, index = parts[0], int(parts[1])
        if head == "swap":
            steps.append(swap_step(index))
            continue
        if head == "pair":
            gate = parse(f"qubits {n}\n{' '.join(parts[2:])}\n").gates[0]
            steps.append(insert_pair_step(index, gate))
            continue
        kwargs = {}
        for opt in parts[2:]:
            key, _, value = opt.partition("=")
            if key == "b":
                kwargs["b_axis"] = _AXIS_BY_LETTER[value]
            elif key == "dir":
                kwargs["direction"] = "backward"
            elif key == "var":
                kwargs["variant"] = value
            elif key == "line":
                kwargs["line"] = int(value)
            elif key == "split":
                kwargs["split_exp"] = Fraction(value)
            else:
                raise ValueError(f"unknown step option {opt!r}")
        steps.append(rule_step(head, index, **kwargs))
    return tuple(steps)


_AMY_TOFFOLI_STEPS = """\
ConjugateByTranslation 4 b=z
ConjugateByTranslation 2 b=z
ConjugateByTranslation 0 b=z
swap 2
CancelInvolution 3
swap 4
CancelInvolution 5
Thm1RemoveControl 5 b=x
Thm1RemoveControl 3 b=x
Thm1RemoveControl 1 b=x
swap 8
swap 7
swap 12
SwapTConjugation 9
swap 8
swap 9
swap 10
CancelAdjacentInverses 11
SwapTConjugation 8
CnotRuleD7 10 dir=back
swap 11
swap 10
swap 9
swap 8
swap 7
swap 6
swap 5
swap 4
swap 3
swap 2
swap 1
swap 3
swap 2
swap 10
CnotRuleD7 9 var=b
swap 10
SwapTConjugation 7
CnotRuleD7 9 dir=back var=b
swap 10
swap 11
swap 12
CnotRuleD7 13
swap 14
swap 13
SwapTConjugation 11
swap 10
swap 11
swap 6
swap 5
swap 4
SwapTConjugation 5
swap 8
swap 9
CnotRuleD7 8
CancelInvolution 7
swap 6
"""

_FULL_ADDER_STEPS = """\
Thm2BarencoExtended 2 b=x
Thm2BarencoExtended 0 b=x
swap 4
CancelInvolution 3
swap 8
CancelInvolution 7
swap 2
swap 3
swap 4
swap 5
CancelAdjacentInverses 6
ConjugateByTranslation 5 b=z
ConjugateByTranslation 3 b=z
ConjugateByTranslation 2 b=z
ConjugateByTranslation 0 b=z
CancelInvolution 6
swap 2
CancelInvolution 3
swap 5
CancelInvolution 6
Thm1RemoveControl 6 b=x
Thm1RemoveControl 4 b=x
Thm1RemoveControl 3 b=x
Thm1RemoveControl 1 b=x
swap 3
swap 4
SwapTConjugation 2
swap 9
swap 10
SwapTConjugation 8
swap 14
swap 15
SwapTConjugation 13
swap 19
SwapTConjugation 20
swap 12
swap 13
swap 14
swap 15
swap 16
CancelAdjacentInverses 17
swap 1
swap 2
swap 3
swap 4
swap 5
MergeSameControls 6
swap 10
swap 9
swap 8
swap 7
swap 6
swap 5
swap 4
swap 3
swap 2
swap 1
swap 11
swap 10
swap 9
swap 8
swap 7
swap 6
swap 5
swap 4
swap 3
swap 2
swap 12
swap 11
swap 10
swap 9
swap 8
swap 7
swap 6
swap 5
swap 4
swap 3
swap 13
swap 12
swap 11
swap 10
swap 9
swap 8
swap 7
swap 6
swap 5
swap 4
SwapTConjugation 11
swap 13
swap 12
swap 11
SwapTConjugation 12
swap 10
swap 11
swap 12
swap 9
swap 8
swap 7
swap 6
swap 5
SwapTConjugation 6
swap 8
swap 7
swap 6
SwapTConjugation 7
swap 9
swap 10
CnotRuleD7 9 dir=back
pair 7 cx 0 1
swap 10
swap 9
CnotRuleD7 8 dir=back
swap 11
swap 10
swap 9
SwapTConjugation 10
swap 14
swap 13
swap 12
swap 11
swap 10
SwapTConjugation 11
swap 15
swap 14
swap 13
swap 16
swap 15
swap 17
swap 16
swap 18
swap 17
swap 4
swap 5
SwapTConjugation 15
swap 14
swap 15
swap 13
swap 12
swap 9
swap 10
swap 11
SwapTConjugation 1
swap 3
swap 4
swap 5
swap 6
swap 2
swap 3
swap 4
"""


def derive_amy_toffoli() -> DerivationScript:
    """Step-by-step derivation of the depth-10 Clifford+T Toffoli from the
    five-gate NCV one: conjugate the controlled half-roots onto the Z axis,
    remove their controls, then reorder and recombine the CNOT/T network."""
    return DerivationScript(
        "amy-toffoli",
        builtin("barenco-toffoli"),
        _decode_steps(_AMY_TOFFOLI_STEPS, 3),
        expected_final=builtin("amy-toffoli"),
    )


def derive_full_adder() -> DerivationScript:
    """Step-by-step derivation of the T-depth-2 full adder from two Peres
    gates: expand both doubly-controlled gates, move all quarter roots onto
    the Z axis and strip their controls, then restructure the CNOT network
    (one CNOT pair is inserted along the way) into the shared form that packs
    the T gates into two parallel layers."""
    return DerivationScript(
        "full-adder",
        builtin("peres-pair-adder"),
        _decode_steps(_FULL_ADDER_STEPS, 4),
        expected_final=builtin("full-adder-final"),
    )


# --- mapping passes ---------------------------------------------------------


def expand_ncv(c: Circuit) -> Circuit:
    """Replaces every doubly-controlled X by its five-gate NCV expansion."""
    i = 0
    out = c
    while i < len(out.gates):
        g = out.gates[i]
        if (
            isinstance(g.op, PauliRoot)
            and g.op.exp == 1
            and len(g.controls) >= 2
        ):
            if len(g.controls) > 2 or not all(pol for _, pol in g.controls):
                raise ValueError(
                    f"gate {i}: only two positive controls are supported by the expansion"
                )
            out = apply_rule(
                RewriteStep("Thm2BarencoExtended", i, RuleParams(b_axis=g.op.axis)), out
            )
            i += 5
        else:
            i += 1
    return out


def toffoli_family(a: int, b: int, c: int) -> Circuit:
    """The parametrized 3-qubit Clifford+T construction with a single target
    gate on line 2; bits select plain (0) or daggered (1) quarter roots."""
    for bit in (a, b, c):
        if bit not in (0, 1):
            raise ValueError("family parameters must be bits")

    def tpow(bit: int, line: int) -> str:
        return ("t " if bit == 0 else "tdg ") + str(line)

    lines = [
        "qubits 3",
        "h 2",
        "cx 1 2",
        tpow(c, 0),
        tpow(a, 1),
        tpow(1 - a, 2),
        "cx 0 2",
        "cx 0 1",
        tpow(1 - b, 2),
        "cx 1 2",
    ]
    if a == b:
        lines.append(("s " if a == 0 else "sdg ") + "2")
    lines += [
        "cx 2 0",
        tpow(1 - c, 0),
        tpow(b, 1),
        tpow(c, 2),
        "cx 2 0",
        "cx 0 1",
        "h 2",
    ]
    return parse("\n".join(lines) + "\n")


def _touches(g: Gate, line: int) -> bool:
    return line in g.lines


def _cancel_translations(c: Circuit) -> Circuit:
    """Removes pairs of identical uncontrolled translations that are
    consecutive on their line (no gate in between touches it)."""
    gates = list(c.gates)
    changed = True
    while changed:
        changed = False
        for i, g in enumerate(gates):
            if not isinstance(g.op, Translation) or g.controls:
                continue
            for j in range(i + 1, len(gates)):
                other = gates[j]
                if not _touches(other, g.target):
                    continue
                if (
                    isinstance(other.op, Translation)
                    and not other.controls
                    and other.target == g.target
                    and {other.op.a, other.op.b} == {g.op.a, g.op.b}
                ):
                    del gates[j]
                    del gates[i]
                    changed = True
                break
            if changed:
                break
    return Circuit(c.n, tuple(gates))


def translate_library(c: Circuit, target_axis: int) -> Circuit:
    """Conjugates every uncontrolled Pauli root into the target axis and
    cancels the translation pairs this creates."""
    out = []
    for g in c.gates:
        if isinstance(g.op, PauliRoot) and not g.controls and g.op.axis != target_axis:
            lo, hi = sorted((g.op.axis, target_axis))
            rho = Gate(Translation(lo, hi), g.target)
            out += [rho, Gate(PauliRoot(target_axis, g.op.exp), g.target), rho]
        else:
            out.append(g)
    return _cancel_translations(Circuit(c.n, tuple(out)))


def remove_control(c: Circuit, gate_index: int, b_axis: int | None = None) -> Circuit:
    g = c.gates[gate_index] if 0 <= gate_index < len(c.gates) else None
    if g is None:
        raise ValueError(f"gate index {gate_index} out of bounds")
    if not isinstance(g.op, PauliRoot):
        raise ValueError(f"gate {gate_index} is not a Pauli root")
    if not g.controls:
        raise ValueError(f"gate {gate_index} has no control to remove")
    return apply_rule(
        RewriteStep("Thm1RemoveControl", gate_index, RuleParams(b_axis=b_axis)), c
    )


_CLEANUP_RULES = ("CancelAdjacentInverses", "CancelInvolution", "MergeSameControls")


def cleanup_fixed_point(c: Circuit) -> Circuit:
    """Leftmost-first cancellation and merge passes until nothing changes,
    capped at 10x the gate count."""
    out = c
    for _ in range(10 * max(len(c.gates), 1)):
        changed = False
        for anchor in range(len(out.gates)):
            for rule in _CLEANUP_RULES:
                ok, _ = applicable(rule, out, anchor)
                if ok:
                    out = apply_rule(RewriteStep(rule, anchor), out)
                    changed = True
                    break
            if changed:
                break
        if not changed:
            break
    return out


def ncv_to_clifford_t(c: Circuit) -> Circuit:
    """Maps NCV circuits (CNOTs plus singly-controlled X half-roots) into the
    Clifford+T basis: translate the controlled half-roots onto the Z axis,
    remove their control, then clean up."""
    out = expand_ncv(c) if any(len(g.controls) >= 2 for g in c.gates) else c
    i = 0
    while i < len(out.gates):
        g = out.gates[i]
        if (
            isinstance(g.op, PauliRoot)
            and g.op.axis != Z_AXIS
            and abs(g.op.exp) != 1
            and g.controls
        ):
            out = apply_rule(
                RewriteStep("ConjugateByTranslation", i, RuleParams(b_axis=Z_AXIS)), out
            )
            i += 3
        else:
            i += 1
    i = 0
    while i < len(out.gates):
        g = out.gates[i]
        if (
            isinstance(g.op, PauliRoot)
            and g.op.axis == Z_AXIS
            and abs(g.op.exp) != 1
            and g.controls
        ):
            out = apply_rule(
                RewriteStep("Thm1RemoveControl", i, RuleParams(b_axis=X_AXIS)), out
            )
            i += 5
        else:
            i += 1
    return cleanup_fixed_point(out)
