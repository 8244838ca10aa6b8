"""Circuit data model: named 2x2 operations placed on numbered lines with
mixed-polarity controls, plus validation and the depth / T-depth metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .algebra import AXES


@dataclass(frozen=True)
class PauliRoot:
    """sigma_axis raised to the reduced rational exponent."""

    axis: int
    exp: Fraction

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"bad axis {self.axis}")
        if not isinstance(self.exp, Fraction):
            object.__setattr__(self, "exp", Fraction(self.exp))

    def inverse(self) -> "PauliRoot":
        return PauliRoot(self.axis, -self.exp)


@dataclass(frozen=True)
class Translation:
    """rho_ab = (sigma_a + sigma_b)/sqrt(2); its own inverse."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a not in AXES or self.b not in AXES:
            raise ValueError(f"bad axes {self.a}, {self.b}")

    def inverse(self) -> "Translation":
        return self


@dataclass(frozen=True)
class Negator:
    """N_axis(theta), the one-parameter sweep through the roots of sigma_axis."""

    axis: int
    theta: float

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ValueError(f"bad axis {self.axis}")

    def inverse(self) -> "Negator":
        return Negator(self.axis, -self.theta)


NamedOp = Union[PauliRoot, Translation, Negator]

# A control is (line, polarity); polarity True fires on |1>, False on |0>.
Control = tuple[int, bool]


@dataclass(frozen=True)
class Gate:
    op: NamedOp
    target: int
    controls: tuple[Control, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "controls", tuple(sorted(set(self.controls))))

    @property
    def control_lines(self) -> tuple[int, ...]:
        return tuple(line for line, _ in self.controls)

    @property
    def lines(self) -> frozenset[int]:
        return frozenset((self.target,) + self.control_lines)

    @property
    def span(self) -> range:
        lo = min(self.lines)
        return range(lo, max(self.lines) + 1)

    def with_op(self, op: NamedOp) -> "Gate":
        return Gate(op, self.target, self.controls)

    def relabeled(self, perm: dict[int, int]) -> "Gate":
        return Gate(
            self.op,
            perm.get(self.target, self.target),
            tuple((perm.get(line, line), pol) for line, pol in self.controls),
        )


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))

    def replace(self, start: int, stop: int, new_gates: tuple[Gate, ...] | list[Gate]) -> "Circuit":
        return Circuit(self.n, self.gates[:start] + tuple(new_gates) + self.gates[stop:])

    def append(self, *gates: Gate) -> "Circuit":
        return Circuit(self.n, self.gates + gates)

    def reversed(self) -> "Circuit":
        return Circuit(self.n, tuple(reversed(self.gates)))


def validate(c: Circuit) -> list[str]:
    """Every violation as a human-readable string carrying the gate index."""
    problems = []
    if c.n < 1:
        problems.append(f"qubit count must be >= 1, got {c.n}")
        return problems
    for i, g in enumerate(c.gates):
        lines = (g.target,) + g.control_lines
        for line in lines:
            if not 0 <= line < c.n:
                problems.append(f"gate {i}: line {line} outside 0..{c.n - 1}")
        if g.target in g.control_lines:
            problems.append(f"gate {i}: target {g.target} also used as control")
        if len(set(g.control_lines)) != len(g.control_lines):
            problems.append(f"gate {i}: duplicate control line")
    return problems


def require_valid(c: Circuit) -> None:
    problems = validate(c)
    if problems:
        raise ValueError("invalid circuit: " + "; ".join(problems))


def is_t_like(g: Gate) -> bool:
    """Uncontrolled Z^(m/4) with m odd (T and T-dagger powers)."""
    return (
        not g.controls
        and isinstance(g.op, PauliRoot)
        and g.op.axis == 3
        and g.op.exp.denominator == 4
    )


def has_controlled_t(c: Circuit) -> bool:
    return any(
        g.controls
        and isinstance(g.op, PauliRoot)
        and g.op.axis == 3
        and g.op.exp.denominator == 4
        for g in c.gates
    )


def stages(c: Circuit) -> list[int]:
    """1-based scheduling stage per gate.

    A gate occupies every line in the interval spanned by its target and
    controls, the way it blocks a column when drawn; its stage is one past the
    latest stage seen on any occupied line.
    """
    level = [0] * c.n
    out = []
    for g in c.gates:
        s = 1 + max(level[line] for line in g.span)
        for line in g.span:
            level[line] = s
        out.append(s)
    return out


def critical_depth(c: Circuit) -> int:
    require_valid(c)
    st = stages(c)
    return max(st, default=0)


def t_depth(c: Circuit) -> int:
    """Longest chain of T-like gates in the same occupancy DAG."""
    require_valid(c)
    level = [0] * c.n
    depth = 0
    for g in c.gates:
        s = max(level[line] for line in g.span) + (1 if is_t_like(g) else 0)
        for line in g.span:
            level[line] = s
        depth = max(depth, s)
    return depth


def _op_key(op: NamedOp) -> str:
    if isinstance(op, PauliRoot):
        axis = "xyz"[op.axis - 1]
        return f"root {axis} {op.exp.numerator}/{op.exp.denominator}"
    if isinstance(op, Translation):
        return f"trans {'xyz'[op.a - 1]} {'xyz'[op.b - 1]}"
    return f"neg {'xyz'[op.axis - 1]}"


@dataclass(frozen=True)
class CircuitStats:
    depth: int
    t_depth: int
    gate_count: int
    counts: dict[str, int] = field(default_factory=dict)
    controlled_t_warning: bool = False

    def as_dict(self) -> dict:
        return {
            "depth": self.depth,
            "t_depth": self.t_depth,
            "gate_count": self.gate_count,
            "counts": dict(self.counts),
            "controlled_t_warning": self.controlled_t_warning,
        }


def stats(c: Circuit) -> CircuitStats:
    require_valid(c)
    counts: dict[str, int] = {}
    for g in c.gates:
        key = _op_key(g.op)
        counts[key] = counts.get(key, 0) + 1
    return CircuitStats(
        depth=critical_depth(c),
        t_depth=t_depth(c),
        gate_count=len(c.gates),
        counts=counts,
        controlled_t_warning=has_controlled_t(c),
    )
