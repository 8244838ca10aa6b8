"""Anchored rewrite rules over Pauli-root circuits.

Every rule is a local pattern/replacement pair applied at an explicit gate
index. Application never trusts the catalog: callers are expected to (and the
session engine does) re-verify equivalence, and check_soundness hammers each
rule with randomized instances against the dense-unitary oracle.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, fields
from fractions import Fraction

from .algebra import AXES, X_AXIS, Z_AXIS
from .circuit import Circuit, Gate, PauliRoot, Translation
from .semantics import equivalent
from .text import print_circuit

RULE_IDS = (
    "MergeSameControls",
    "CommuteOppositePolarity",
    "EliminateBothPolarities",
    "CaseGateSplit",
    "FlipZRootControlTarget",
    "ConjugateByTranslation",
    "MoveZRootOverControl",
    "CnotRuleD7",
    "Lemma1Case",
    "Lemma1CaseCorollary",
    "Thm1RemoveControl",
    "Thm2BarencoExtended",
    "SwapTConjugation",
    "CancelAdjacentInverses",
    "CancelInvolution",
)

# Rules whose backward direction is implemented (self-inverse rules accept
# both directions and behave identically).
BIDIRECTIONAL = frozenset(
    {
        "MergeSameControls",
        "CommuteOppositePolarity",
        "EliminateBothPolarities",
        "CaseGateSplit",
        "FlipZRootControlTarget",
        "ConjugateByTranslation",
        "MoveZRootOverControl",
        "CnotRuleD7",
        "Lemma1Case",
        "Lemma1CaseCorollary",
        "Thm1RemoveControl",
        "Thm2BarencoExtended",
        "SwapTConjugation",
    }
)


@dataclass(frozen=True)
class RuleParams:
    direction: str = "forward"
    b_axis: int | None = None
    line: int | None = None
    variant: str | None = None
    split_exp: Fraction | None = None
    commute_first_to_end: bool = False
    swap_lines: bool = False
    dagger: bool = False
    move_last_root: bool = False
    swap_cb: bool = False

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v == f.default:
                continue
            if isinstance(v, Fraction):
                v = f"{v.numerator}/{v.denominator}"
            out[f.name] = v
        return out

    @staticmethod
    def from_dict(d: dict) -> "RuleParams":
        kw = dict(d)
        if "split_exp" in kw and isinstance(kw["split_exp"], str):
            num, _, den = kw["split_exp"].partition("/")
            kw["split_exp"] = Fraction(int(num), int(den or 1))
        known = {f.name for f in fields(RuleParams)}
        bad = set(kw) - known
        if bad:
            raise ValueError(f"unknown rule parameter(s): {sorted(bad)}")
        return RuleParams(**kw)


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    anchor: int
    params: RuleParams = field(default_factory=RuleParams)

    def to_dict(self) -> dict:
        return {"rule": self.rule, "anchor": self.anchor, "params": self.params.to_dict()}

    @staticmethod
    def from_dict(d: dict) -> "RewriteStep":
        return RewriteStep(d["rule"], int(d["anchor"]), RuleParams.from_dict(d.get("params", {})))


class NotApplicable(Exception):
    """The pattern does not match at the anchor; str() is the diagnostic."""


_ALLOWED_PARAMS = {
    "MergeSameControls": {"direction", "split_exp"},
    "CommuteOppositePolarity": {"direction"},
    "EliminateBothPolarities": {"direction", "line"},
    "CaseGateSplit": {"direction"},
    "FlipZRootControlTarget": {"direction", "line"},
    "ConjugateByTranslation": {"direction", "b_axis"},
    "MoveZRootOverControl": {"direction"},
    "CnotRuleD7": {"direction", "variant"},
    "Lemma1Case": {"direction", "b_axis"},
    "Lemma1CaseCorollary": {"direction", "b_axis"},
    "Thm1RemoveControl": {
        "direction",
        "b_axis",
        "line",
        "commute_first_to_end",
        "swap_cb",
        "dagger",
    },
    "Thm2BarencoExtended": {
        "direction",
        "b_axis",
        "swap_lines",
        "dagger",
        "move_last_root",
    },
    "SwapTConjugation": {"direction"},
    "CancelAdjacentInverses": {"direction"},
    "CancelInvolution": {"direction"},
}


def _check_params(rule: str, params: RuleParams) -> None:
    allowed = _ALLOWED_PARAMS[rule]
    for f in fields(params):
        if getattr(params, f.name) != f.default and f.name not in allowed:
            raise NotApplicable(f"parameter {f.name!r} not meaningful for {rule}")
    if params.direction not in ("forward", "backward"):
        raise NotApplicable(f"direction must be forward or backward, got {params.direction!r}")
    if params.direction == "backward" and rule not in BIDIRECTIONAL:
        raise NotApplicable(f"{rule} has no backward direction")


def _window(c: Circuit, anchor: int, size: int) -> tuple[Gate, ...]:
    if anchor + size > len(c.gates):
        raise NotApplicable(f"needs {size} gates at index {anchor}, circuit ends early")
    return c.gates[anchor : anchor + size]


def _root(axis: int, exp: Fraction | int, target: int, controls=()) -> Gate:
    return Gate(PauliRoot(axis, Fraction(exp)), target, tuple(controls))


def _cx(ctrl: int, target: int) -> Gate:
    return _root(X_AXIS, 1, target, ((ctrl, True),))


def _is_cx(g: Gate) -> bool:
    return (
        isinstance(g.op, PauliRoot)
        and g.op.axis == X_AXIS
        and g.op.exp == 1
        and len(g.controls) == 1
        and g.controls[0][1]
    )


def _is_zdiag(g: Gate) -> bool:
    return isinstance(g.op, PauliRoot) and g.op.axis == Z_AXIS


def _dagger(g: Gate) -> Gate:
    return g.with_op(g.op.inverse())


def _default_b(a: int) -> int:
    return X_AXIS if a == Z_AXIS else Z_AXIS


def _root_pair(w: tuple[Gate, ...], what: str) -> tuple[PauliRoot, PauliRoot]:
    g1, g2 = w
    if not isinstance(g1.op, PauliRoot) or not isinstance(g2.op, PauliRoot):
        raise NotApplicable(f"{what}: both gates must be Pauli roots")
    if g1.op.axis != g2.op.axis:
        raise NotApplicable(f"{what}: axes differ")
    if g1.target != g2.target:
        raise NotApplicable(f"{what}: targets differ")
    return g1.op, g2.op


def _split_one_control(g1: Gate, g2: Gate) -> tuple[int, bool, tuple]:
    """Controls equal except one line carried with opposite polarities.

    Returns (line, polarity-on-g1, shared controls)."""
    s1, s2 = set(g1.controls), set(g2.controls)
    d1, d2 = s1 - s2, s2 - s1
    if len(d1) != 1 or len(d2) != 1:
        raise NotApplicable("control sets differ on more than one line")
    (l1, p1), (l2, p2) = d1.pop(), d2.pop()
    if l1 != l2 or p1 == p2:
        raise NotApplicable("control sets differ")
    return l1, p1, tuple(sorted(s1 & s2))


# Each matcher returns (window length, replacement gates).


def _m_merge_same_controls(c, anchor, p):
    if p.direction == "backward":
        (g,) = _window(c, anchor, 1)
        if not isinstance(g.op, PauliRoot):
            raise NotApplicable("gate is not a Pauli root")
        split = p.split_exp if p.split_exp is not None else g.op.exp / 2
        return 1, [
            g.with_op(PauliRoot(g.op.axis, g.op.exp - split)),
            g.with_op(PauliRoot(g.op.axis, split)),
        ]
    w = _window(c, anchor, 2)
    o1, o2 = _root_pair(w, "merge")
    if w[0].controls != w[1].controls:
        raise NotApplicable("control sets differ")
    total = o1.exp + o2.exp
    if total == 0:
        return 2, []
    return 2, [w[0].with_op(PauliRoot(o1.axis, total))]


def _m_commute_opposite_polarity(c, anchor, p):
    g1, g2 = _window(c, anchor, 2)
    pols = dict(g1.controls)
    if not any(line in pols and pols[line] != pol for line, pol in g2.controls):
        raise NotApplicable("no common control line with opposite polarities")
    return 2, [g2, g1]


def _m_eliminate_both_polarities(c, anchor, p):
    if p.direction == "backward":
        (g,) = _window(c, anchor, 1)
        if p.line is None:
            raise NotApplicable("backward split needs the control line parameter")
        u = p.line
        if not 0 <= u < c.n:
            raise NotApplicable(f"line {u} outside the circuit")
        if u == g.target or u in g.control_lines:
            raise NotApplicable(f"line {u} already used by the gate")
        return 1, [
            Gate(g.op, g.target, g.controls + ((u, False),)),
            Gate(g.op, g.target, g.controls + ((u, True),)),
        ]
    g1, g2 = _window(c, anchor, 2)
    if g1.op != g2.op or g1.target != g2.target:
        raise NotApplicable("gates must be identical apart from one control")
    _, _, shared = _split_one_control(g1, g2)
    return 2, [Gate(g1.op, g1.target, shared)]


def _m_case_gate_split(c, anchor, p):
    if p.direction == "backward":
        w = _window(c, anchor, 2)
        o1, o2 = _root_pair(w, "case merge")
        extra = set(w[1].controls) - set(w[0].controls)
        if set(w[0].controls) - set(w[1].controls) or len(extra) != 1:
            raise NotApplicable("second gate must add exactly one control")
        u, pol = extra.pop()
        if not pol:
            raise NotApplicable("added control must be positive")
        if u == w[0].target:
            raise NotApplicable("added control collides with the target")
        s = w[0].controls
        return 2, [
            Gate(PauliRoot(o1.axis, o1.exp), w[0].target, s + ((u, False),)),
            Gate(PauliRoot(o1.axis, o1.exp + o2.exp), w[0].target, s + ((u, True),)),
        ]
    w = _window(c, anchor, 2)
    o1, o2 = _root_pair(w, "case split")
    u, pol1, shared = _split_one_control(*w)
    if pol1:
        raise NotApplicable("first gate must carry the negative polarity")
    t = w[0].target
    return 2, [
        Gate(PauliRoot(o1.axis, o1.exp), t, shared),
        Gate(PauliRoot(o1.axis, o2.exp - o1.exp), t, shared + ((u, True),)),
    ]


def _m_flip_z_root(c, anchor, p):
    (g,) = _window(c, anchor, 1)
    if not _is_zdiag(g):
        raise NotApplicable("gate is not a Z-axis root")
    positives = [line for line, pol in g.controls if pol]
    if not positives:
        raise NotApplicable("needs at least one positive control")
    u = p.line if p.line is not None else positives[0]
    if u not in positives:
        raise NotApplicable(f"line {u} is not a positive control of the gate")
    rest = tuple(ctrl for ctrl in g.controls if ctrl != (u, True))
    return 1, [Gate(g.op, u, rest + ((g.target, True),))]


def _m_conjugate_by_translation(c, anchor, p):
    if p.direction == "backward":
        g1, g2, g3 = _window(c, anchor, 3)
        if not isinstance(g1.op, Translation) or g1.controls or g1.op.a == g1.op.b:
            raise NotApplicable("first gate must be an uncontrolled proper translation")
        if g3.target != g1.target or not isinstance(g3.op, Translation) or g3.controls:
            raise NotApplicable("third gate must repeat the translation")
        if {g3.op.a, g3.op.b} != {g1.op.a, g1.op.b}:
            raise NotApplicable("translations differ")
        if not isinstance(g2.op, PauliRoot) or g2.target != g1.target:
            raise NotApplicable("middle gate must be a Pauli root on the translated line")
        if g2.op.axis not in (g1.op.a, g1.op.b):
            raise NotApplicable("root axis is not moved by this translation")
        other = g1.op.a if g2.op.axis == g1.op.b else g1.op.b
        return 3, [g2.with_op(PauliRoot(other, g2.op.exp))]
    (g,) = _window(c, anchor, 1)
    if not isinstance(g.op, PauliRoot):
        raise NotApplicable("gate is not a Pauli root")
    a = g.op.axis
    b = p.b_axis if p.b_axis is not None else _default_b(a)
    if b not in AXES:
        raise NotApplicable(f"bad axis {b}")
    if b == a:
        raise NotApplicable("translation axis must differ from the root axis")
    rho = Gate(Translation(a, b), g.target)
    return 1, [rho, g.with_op(PauliRoot(b, g.op.exp)), rho]


def _m_move_z_root_over_control(c, anchor, p):
    g1, g2 = _window(c, anchor, 2)
    ok = (
        _is_zdiag(g1) and g1.target in g2.control_lines and g2.target not in g1.lines
    ) or (_is_zdiag(g2) and g2.target in g1.control_lines and g1.target not in g2.lines)
    if not ok:
        raise NotApplicable("neither gate is a Z-root sitting on the other's control line")
    return 2, [g2, g1]


def _m_cnot_rule_d7(c, anchor, p):
    variant = p.variant or "a"
    if variant not in ("a", "b"):
        raise NotApplicable(f"variant must be 'a' or 'b', got {variant!r}")
    if p.direction == "backward":
        w = _window(c, anchor, 3)
        if not all(_is_cx(g) for g in w):
            raise NotApplicable("window must be three CNOTs")
        if variant == "a":
            # [CX(b->c), CX(a->b), CX(a->c)] -> [CX(a->b), CX(b->c)]
            b, cc = w[0].controls[0][0], w[0].target
            a = w[1].controls[0][0]
            if w[1].target != b or w[2].controls[0][0] != a or w[2].target != cc:
                raise NotApplicable("CNOT lines do not match the expanded pattern")
            return 3, [_cx(a, b), _cx(b, cc)]
        # [CX(a->b), CX(b->c), CX(a->c)] -> [CX(b->c), CX(a->b)]
        a, b = w[0].controls[0][0], w[0].target
        cc = w[1].target
        if w[1].controls[0][0] != b or w[2].controls[0][0] != a or w[2].target != cc:
            raise NotApplicable("CNOT lines do not match the expanded pattern")
        return 3, [_cx(b, cc), _cx(a, b)]
    g1, g2 = _window(c, anchor, 2)
    if not _is_cx(g1) or not _is_cx(g2):
        raise NotApplicable("both gates must be CNOTs")
    if variant == "a":
        a, b = g1.controls[0][0], g1.target
        if g2.controls[0][0] != b:
            raise NotApplicable("second CNOT must be controlled by the first's target")
        cc = g2.target
        if cc == a:
            raise NotApplicable("lines must be three distinct qubits")
        return 2, [_cx(b, cc), _cx(a, b), _cx(a, cc)]
    b, cc = g1.controls[0][0], g1.target
    if g2.target != b:
        raise NotApplicable("second CNOT must target the first's control")
    a = g2.controls[0][0]
    if a == cc:
        raise NotApplicable("lines must be three distinct qubits")
    return 2, [_cx(a, b), _cx(b, cc), _cx(a, cc)]


def _lemma1_forward(c, anchor, p, corollary: bool):
    w = _window(c, anchor, 2)
    o1, o2 = _root_pair(w, "lemma pattern")
    if o1.exp != -o2.exp:
        raise NotApplicable("exponents must be negations of each other")
    u, pol1, shared = _split_one_control(*w)
    # Lemma: negative-control gate first; corollary: positive-control first.
    if corollary != pol1:
        raise NotApplicable(
            "positive-control gate must come "
            + ("first" if corollary else "second")
        )
    t = w[0].target
    a = o1.axis
    b = p.b_axis if p.b_axis is not None else _default_b(a)
    if b == a or b not in AXES:
        raise NotApplicable("helper axis must differ from the root axis")
    cb = _root(b, 1, t, shared + ((u, True),))
    if corollary:
        e = o1.exp
        mid = [_root(a, -e, t, shared), _root(Z_AXIS, e, u, shared)]
    else:
        e = o2.exp
        mid = [_root(Z_AXIS, e, u, shared), _root(a, -e, t, shared)]
    return 2, [cb, *mid, cb]


def _lemma1_backward(c, anchor, p, corollary: bool):
    g0, g1, g2, g3 = _window(c, anchor, 4)
    if g0 != g3:
        raise NotApplicable("outer gates must be identical")
    if not isinstance(g0.op, PauliRoot) or g0.op.exp != 1:
        raise NotApplicable("outer gates must be full Pauli gates")
    if corollary:
        g_root, g_z = g1, g2
    else:
        g_z, g_root = g1, g2
    if not isinstance(g_root.op, PauliRoot) or not isinstance(g_z.op, PauliRoot):
        raise NotApplicable("inner gates must be Pauli roots")
    if g_z.op.axis != Z_AXIS:
        raise NotApplicable("phase gate must be a Z-root")
    t = g0.target
    if g_root.target != t:
        raise NotApplicable("inner root must share the outer gates' target")
    shared = g_root.controls
    if g_z.controls != shared:
        raise NotApplicable("inner gates must carry the same controls")
    u = g_z.target
    if set(g0.controls) != set(shared) | {(u, True)}:
        raise NotApplicable("outer controls must be the shared set plus the phase line")
    a = g_root.op.axis
    if a == g0.op.axis:
        raise NotApplicable("helper axis must differ from the root axis")
    e = g_z.op.exp
    if g_root.op.exp != -e:
        raise NotApplicable("inner exponents must be negations of each other")
    if corollary:
        return 4, [
            _root(a, e, t, shared + ((u, True),)),
            _root(a, -e, t, shared + ((u, False),)),
        ]
    return 4, [
        _root(a, -e, t, shared + ((u, False),)),
        _root(a, e, t, shared + ((u, True),)),
    ]


def _m_lemma1(c, anchor, p):
    if p.direction == "backward":
        return _lemma1_backward(c, anchor, p, corollary=False)
    return _lemma1_forward(c, anchor, p, corollary=False)


def _m_lemma1_corollary(c, anchor, p):
    if p.direction == "backward":
        return _lemma1_backward(c, anchor, p, corollary=True)
    return _lemma1_forward(c, anchor, p, corollary=True)


def _thm1_rhs(a, b, h, t, u, shared, p):
    first = _root(a, h, t, shared)
    if p.swap_cb:
        if b != Z_AXIS:
            raise NotApplicable("control/target swap only applies to a Z helper axis")
        cb = _root(Z_AXIS, 1, u, shared + ((t, True),))
    else:
        cb = _root(b, 1, t, shared + ((u, True),))
    mid = sorted([_root(Z_AXIS, h, u, shared), _root(a, -h, t, shared)], key=lambda g: g.target)
    if p.commute_first_to_end:
        return [cb, *mid, cb, first]
    return [first, cb, *mid, cb]


def _m_thm1_remove_control(c, anchor, p):
    if p.direction == "backward":
        g0, g1, g2, g3, g4 = _window(c, anchor, 5)
        if g1 != g4 or not isinstance(g1.op, PauliRoot) or g1.op.exp != 1:
            raise NotApplicable("outer conjugating gates must be identical Pauli gates")
        if not isinstance(g0.op, PauliRoot):
            raise NotApplicable("leading gate must be a Pauli root")
        a, h, t = g0.op.axis, g0.op.exp, g0.target
        shared = g0.controls
        if g1.target != t or g1.op.axis == a:
            raise NotApplicable("conjugating gate must act on the target with a different axis")
        extra = set(g1.controls) - set(shared)
        if set(shared) - set(g1.controls) or len(extra) != 1:
            raise NotApplicable("conjugating gate must add exactly one control")
        u, pol = extra.pop()
        if not pol:
            raise NotApplicable("removed control must be positive")
        mid = {g2, g3}
        want = {_root(Z_AXIS, h, u, shared), _root(a, -h, t, shared)}
        if mid != want:
            raise NotApplicable("middle pair does not match the expansion")
        return 5, [_root(a, 2 * h, t, shared + ((u, True),))]
    (g,) = _window(c, anchor, 1)
    if not isinstance(g.op, PauliRoot):
        raise NotApplicable("gate is not a Pauli root")
    positives = [line for line, pol in g.controls if pol]
    if not positives:
        raise NotApplicable("needs at least one positive control")
    u = p.line if p.line is not None else max(positives)
    if u not in positives:
        raise NotApplicable(f"line {u} is not a positive control of the gate")
    a = g.op.axis
    b = p.b_axis if p.b_axis is not None else _default_b(a)
    if b == a or b not in AXES:
        raise NotApplicable("helper axis must differ from the root axis")
    shared = tuple(ctrl for ctrl in g.controls if ctrl != (u, True))
    h = g.op.exp / 2
    if p.dagger:
        rhs = _thm1_rhs(a, b, -h, g.target, u, shared, p)
        return 1, [_dagger(x) for x in reversed(rhs)]
    return 1, _thm1_rhs(a, b, h, g.target, u, shared, p)


def _thm2_rhs(a, b, h, t, u1, u2, p):
    core = [
        _root(b, h, t, ((u2, True),)),
        _cx(u1, u2),
        _root(b, -h, t, ((u2, True),)),
        _cx(u1, u2),
        _root(b, h, t, ((u1, True),)),
    ]
    if a == b:
        return core
    rho = Gate(Translation(a, b), t)
    if p.move_last_root:
        return [rho, *core[:4], rho, _root(a, h, t, ((u1, True),))]
    return [rho, *core, rho]


def _m_thm2_barenco(c, anchor, p):
    if p.direction == "backward":
        w = _window(c, anchor, 1)  # bounds check only
        has_rho = isinstance(c.gates[anchor].op, Translation)
        size = 7 if has_rho else 5
        w = _window(c, anchor, size)
        core = w[1:6] if has_rho else w
        if has_rho:
            rho1, rho2 = w[0], w[6]
            if rho1 != rho2 or rho1.controls or not isinstance(rho1.op, Translation):
                raise NotApplicable("outer translations must match and be uncontrolled")
        r1, x1, r2, x2, r3 = core
        if not (_is_cx(x1) and _is_cx(x2) and x1 == x2):
            raise NotApplicable("expected two identical CNOTs inside the pattern")
        for g in (r1, r2, r3):
            if not isinstance(g.op, PauliRoot) or len(g.controls) != 1 or not g.controls[0][1]:
                raise NotApplicable("expected singly-controlled roots inside the pattern")
        b, h, t = r1.op.axis, r1.op.exp, r1.target
        u1, u2 = x1.controls[0][0], x1.target
        if r2.op != PauliRoot(b, -h) or r3.op != PauliRoot(b, h):
            raise NotApplicable("root exponents do not match the pattern")
        if r1.controls[0][0] != u2 or r2.controls[0][0] != u2 or r3.controls[0][0] != u1:
            raise NotApplicable("control placement does not match the pattern")
        if r2.target != t or r3.target != t:
            raise NotApplicable("roots must share one target")
        if has_rho:
            if rho1.target != t:
                raise NotApplicable("translations must act on the root target")
            pair = {rho1.op.a, rho1.op.b}
            if b not in pair or len(pair) != 2:
                raise NotApplicable("translation does not move the helper axis")
            a = (pair - {b}).pop()
        else:
            a = b
        return size, [_root(a, 2 * h, t, ((u1, True), (u2, True)))]
    (g,) = _window(c, anchor, 1)
    if not isinstance(g.op, PauliRoot):
        raise NotApplicable("gate is not a Pauli root")
    if len(g.controls) != 2 or not all(pol for _, pol in g.controls):
        raise NotApplicable("needs exactly two positive controls")
    u1, u2 = (line for line, _ in g.controls)
    if p.swap_lines:
        u1, u2 = u2, u1
    a = g.op.axis
    b = p.b_axis if p.b_axis is not None else a
    if b not in AXES:
        raise NotApplicable(f"bad axis {b}")
    h = g.op.exp / 2
    if p.dagger:
        rhs = _thm2_rhs(a, b, -h, g.target, u1, u2, p)
        return 1, [_dagger(x) for x in reversed(rhs)]
    return 1, _thm2_rhs(a, b, h, g.target, u1, u2, p)


def _m_swap_t_conjugation(c, anchor, p):
    g1, g2, g3 = _window(c, anchor, 3)
    if not _is_cx(g1) or g1 != g3:
        raise NotApplicable("outer gates must be identical CNOTs")
    if not _is_zdiag(g2) or g2.controls:
        raise NotApplicable("middle gate must be an uncontrolled Z-root")
    u, t = g1.controls[0][0], g1.target
    if g2.target != t:
        raise NotApplicable("Z-root must sit on the CNOT target")
    return 3, [_cx(t, u), _root(Z_AXIS, g2.op.exp, u), _cx(t, u)]


def _m_cancel_adjacent_inverses(c, anchor, p):
    g1, g2 = _window(c, anchor, 2)
    if g1.target != g2.target or g1.controls != g2.controls:
        raise NotApplicable("gates must share target and controls")
    if g2.op != g1.op.inverse():
        raise NotApplicable("operations are not inverses")
    return 2, []


def _m_cancel_involution(c, anchor, p):
    g1, g2 = _window(c, anchor, 2)
    if g1 != g2:
        raise NotApplicable("gates must be identical")
    op = g1.op
    if isinstance(op, Translation):
        return 2, []
    if isinstance(op, PauliRoot) and abs(op.exp) == 1:
        return 2, []
    raise NotApplicable("operation is not an involution")


_MATCHERS = {
    "MergeSameControls": _m_merge_same_controls,
    "CommuteOppositePolarity": _m_commute_opposite_polarity,
    "EliminateBothPolarities": _m_eliminate_both_polarities,
    "CaseGateSplit": _m_case_gate_split,
    "FlipZRootControlTarget": _m_flip_z_root,
    "ConjugateByTranslation": _m_conjugate_by_translation,
    "MoveZRootOverControl": _m_move_z_root_over_control,
    "CnotRuleD7": _m_cnot_rule_d7,
    "Lemma1Case": _m_lemma1,
    "Lemma1CaseCorollary": _m_lemma1_corollary,
    "Thm1RemoveControl": _m_thm1_remove_control,
    "Thm2BarencoExtended": _m_thm2_barenco,
    "SwapTConjugation": _m_swap_t_conjugation,
    "CancelAdjacentInverses": _m_cancel_adjacent_inverses,
    "CancelInvolution": _m_cancel_involution,
}


def _match(rule: str, c: Circuit, anchor: int, params: RuleParams):
    if rule not in _MATCHERS:
        raise ValueError(f"unknown rule {rule!r}")
    if not 0 <= anchor < max(len(c.gates), 1):
        raise ValueError(f"anchor {anchor} out of bounds for {len(c.gates)} gates")
    if not c.gates:
        raise NotApplicable("circuit is empty")
    _check_params(rule, params)
    return _MATCHERS[rule](c, anchor, params)


def applicable(
    rule: str, c: Circuit, anchor: int, params: RuleParams = RuleParams()
) -> tuple[bool, str]:
    try:
        _match(rule, c, anchor, params)
        return True, "ok"
    except NotApplicable as e:
        return False, str(e)


def apply(step: RewriteStep, c: Circuit) -> Circuit:
    try:
        size, replacement = _match(step.rule, c, step.anchor, step.params)
    except NotApplicable as e:
        raise ValueError(f"{step.rule} not applicable at {step.anchor}: {e}") from None
    return c.replace(step.anchor, step.anchor + size, replacement)


# --- randomized soundness checking -----------------------------------------


@dataclass(frozen=True)
class Counterexample:
    circuit_text: str
    step: RewriteStep
    detail: str


@dataclass(frozen=True)
class SoundnessReport:
    rule: str
    trials: int
    counterexamples: tuple[Counterexample, ...]

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def as_dict(self) -> dict:
        return {
            "rule": self.rule,
            "trials": self.trials,
            "passed": self.passed,
            "counterexamples": [
                {"circuit": ce.circuit_text, "step": ce.step.to_dict(), "detail": ce.detail}
                for ce in self.counterexamples
            ],
        }


_K_CHOICES = (1, 2, 4)


def _rand_exp(rng: random.Random) -> Fraction:
    k = rng.choice(_K_CHOICES)
    m = rng.choice([-3, -2, -1, 1, 2, 3])
    return Fraction(m, k)


def _rand_controls(rng: random.Random, avoid: set[int], n: int, limit: int = 2):
    pool = [line for line in range(n) if line not in avoid]
    rng.shuffle(pool)
    count = rng.randint(0, min(limit, len(pool)))
    return tuple((line, rng.random() < 0.5) for line in pool[:count])


def _rand_gate(rng: random.Random, n: int) -> Gate:
    kind = rng.random()
    t = rng.randrange(n)
    if kind < 0.5:
        axis = rng.choice(AXES)
        return Gate(PauliRoot(axis, _rand_exp(rng)), t, _rand_controls(rng, {t}, n, 1))
    if kind < 0.8 and n >= 2:
        u = rng.choice([line for line in range(n) if line != t])
        return _cx(u, t)
    a, b = rng.choice(AXES), rng.choice(AXES)
    return Gate(Translation(a, b), t)


def _embed(rng: random.Random, n: int, pattern: list[Gate]) -> tuple[Circuit, int]:
    prefix = [_rand_gate(rng, n) for _ in range(rng.randint(0, 3))]
    suffix = [_rand_gate(rng, n) for _ in range(rng.randint(0, 2))]
    return Circuit(n, tuple(prefix + pattern + suffix)), len(prefix)


def _pick_lines(rng: random.Random, n: int, count: int) -> list[int]:
    return rng.sample(range(n), count)


def _gen_instance(rule: str, rng: random.Random) -> tuple[Circuit, RewriteStep]:
    axis = rng.choice(AXES)
    if rule == "MergeSameControls":
        n = rng.randint(1, 4)
        t = rng.randrange(n)
        ctrls = _rand_controls(rng, {t}, n)
        e1, e2 = _rand_exp(rng), _rand_exp(rng)
        if rng.random() < 0.2:
            e2 = -e1
        pat = [Gate(PauliRoot(axis, e1), t, ctrls), Gate(PauliRoot(axis, e2), t, ctrls)]
    elif rule == "CommuteOppositePolarity":
        n = rng.randint(3, 4)
        u, t1, t2 = _pick_lines(rng, n, 3)
        if rng.random() < 0.3:
            t2 = t1
        pat = [
            Gate(PauliRoot(rng.choice(AXES), _rand_exp(rng)), t1, ((u, True),)),
            Gate(PauliRoot(rng.choice(AXES), _rand_exp(rng)), t2, ((u, False),)),
        ]
    elif rule == "EliminateBothPolarities":
        n = rng.randint(2, 4)
        t, u = _pick_lines(rng, n, 2)
        shared = _rand_controls(rng, {t, u}, n, 1)
        op = PauliRoot(axis, _rand_exp(rng)) if rng.random() < 0.7 else Translation(
            rng.choice(AXES), rng.choice(AXES)
        )
        pat = [
            Gate(op, t, shared + ((u, False),)),
            Gate(op, t, shared + ((u, True),)),
        ]
    elif rule == "CaseGateSplit":
        n = rng.randint(2, 4)
        t, u = _pick_lines(rng, n, 2)
        shared = _rand_controls(rng, {t, u}, n, 1)
        pat = [
            Gate(PauliRoot(axis, _rand_exp(rng)), t, shared + ((u, False),)),
            Gate(PauliRoot(axis, _rand_exp(rng)), t, shared + ((u, True),)),
        ]
    elif rule == "FlipZRootControlTarget":
        n = rng.randint(2, 4)
        t, u = _pick_lines(rng, n, 2)
        extra = _rand_controls(rng, {t, u}, n, 1)
        pat = [Gate(PauliRoot(Z_AXIS, _rand_exp(rng)), t, extra + ((u, True),))]
    elif rule == "ConjugateByTranslation":
        n = rng.randint(1, 4)
        t = rng.randrange(n)
        pat = [Gate(PauliRoot(axis, _rand_exp(rng)), t, _rand_controls(rng, {t}, n))]
    elif rule == "MoveZRootOverControl":
        n = rng.randint(2, 4)
        u, t = _pick_lines(rng, n, 2)
        z = Gate(PauliRoot(Z_AXIS, _rand_exp(rng)), u, _rand_controls(rng, {u, t}, n, 1))
        other = Gate(PauliRoot(rng.choice(AXES), _rand_exp(rng)), t, ((u, True),))
        pat = [z, other] if rng.random() < 0.5 else [other, z]
    elif rule == "CnotRuleD7":
        n = rng.randint(3, 4)
        a, b, cc = _pick_lines(rng, n, 3)
        if rng.random() < 0.5:
            pat = [_cx(a, b), _cx(b, cc)]
            params = RuleParams()
        else:
            pat = [_cx(b, cc), _cx(a, b)]
            params = RuleParams(variant="b")
        circ, anchor = _embed(rng, n, pat)
        return circ, RewriteStep(rule, anchor, params)
    elif rule in ("Lemma1Case", "Lemma1CaseCorollary"):
        n = rng.randint(2, 4)
        t, u = _pick_lines(rng, n, 2)
        shared = _rand_controls(rng, {t, u}, n, 1) if n > 2 else ()
        e = _rand_exp(rng)
        b = rng.choice([x for x in AXES if x != axis])
        if rule == "Lemma1Case":
            pat = [
                Gate(PauliRoot(axis, -e), t, shared + ((u, False),)),
                Gate(PauliRoot(axis, e), t, shared + ((u, True),)),
            ]
        else:
            pat = [
                Gate(PauliRoot(axis, e), t, shared + ((u, True),)),
                Gate(PauliRoot(axis, -e), t, shared + ((u, False),)),
            ]
        circ, anchor = _embed(rng, n, pat)
        return circ, RewriteStep(rule, anchor, RuleParams(b_axis=b))
    elif rule == "Thm1RemoveControl":
        n = rng.randint(2, 4)
        t, u = _pick_lines(rng, n, 2)
        shared = _rand_controls(rng, {t, u}, n, 1) if n > 2 else ()
        b = rng.choice([x for x in AXES if x != axis])
        pat = [Gate(PauliRoot(axis, _rand_exp(rng)), t, shared + ((u, True),))]
        params = RuleParams(
            b_axis=b,
            line=u,
            commute_first_to_end=rng.random() < 0.3,
            dagger=rng.random() < 0.3,
            swap_cb=(b == Z_AXIS and rng.random() < 0.3),
        )
        circ, anchor = _embed(rng, n, pat)
        return circ, RewriteStep(rule, anchor, params)
    elif rule == "Thm2BarencoExtended":
        n = rng.randint(3, 4)
        t, u1, u2 = _pick_lines(rng, n, 3)
        b = rng.choice(AXES)
        pat = [Gate(PauliRoot(axis, _rand_exp(rng)), t, ((u1, True), (u2, True)))]
        params = RuleParams(
            b_axis=b,
            swap_lines=rng.random() < 0.3,
            dagger=rng.random() < 0.3,
            move_last_root=(b != axis and rng.random() < 0.3),
        )
        circ, anchor = _embed(rng, n, pat)
        return circ, RewriteStep(rule, anchor, params)
    elif rule == "SwapTConjugation":
        n = rng.randint(2, 4)
        u, t = _pick_lines(rng, n, 2)
        pat = [_cx(u, t), Gate(PauliRoot(Z_AXIS, _rand_exp(rng)), t), _cx(u, t)]
    elif rule == "CancelAdjacentInverses":
        n = rng.randint(1, 4)
        g = _rand_gate(rng, n)
        pat = [g, _dagger(g)]
    elif rule == "CancelInvolution":
        n = rng.randint(1, 4)
        t = rng.randrange(n)
        if rng.random() < 0.5:
            g = Gate(Translation(rng.choice(AXES), rng.choice(AXES)), t)
        else:
            g = Gate(PauliRoot(rng.choice(AXES), Fraction(rng.choice([-1, 1]))), t,
                     _rand_controls(rng, {t}, n, 1))
        pat = [g, g]
    else:
        raise ValueError(f"unknown rule {rule!r}")
    circ, anchor = _embed(rng, n, pat)
    return circ, RewriteStep(rule, anchor, RuleParams())


def check_soundness(rule: str, trials: int = 200, seed: int = 0) -> SoundnessReport:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    counterexamples = []
    for _ in range(trials):
        circ, step = _gen_instance(rule, rng)
        ok, diag = applicable(step.rule, circ, step.anchor, step.params)
        if not ok:
            counterexamples.append(
                Counterexample(print_circuit(circ), step, f"generated instance rejected: {diag}")
            )
            continue
        out = apply(step, circ)
        same, _ = equivalent(circ, out)
        if not same:
            counterexamples.append(
                Counterexample(print_circuit(circ), step, "rewrite changed the unitary")
            )
    return SoundnessReport(rule, trials, tuple(counterexamples))
