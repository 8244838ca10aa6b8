"""Plain-text circuit format.

A file is a `qubits N` header followed by one gate per line. Core forms:

    root <x|y|z> <m>/<k> <target> [ctrl (+|-)<line> ...]
    trans <axis> <axis> <target> [ctrl ...]
    neg <axis> <theta> <target> [ctrl ...]

Shorthand gate names (x, y, z, h, s, sdg, t, tdg, v, vdg, w, wdg) and
`cx <control> <target>` desugar to the core forms. `#` starts a comment.
The printer always emits desugared core forms with reduced exponents and
sorted controls, separated by LF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import X_AXIS, Y_AXIS, Z_AXIS
from .circuit import Circuit, Gate, NamedOp, Negator, PauliRoot, Translation, validate


@dataclass(frozen=True)
class SourceSpan:
    """1-based line number plus a 1-based, inclusive column range."""

    line: int
    col_start: int
    col_end: int

    def __str__(self) -> str:
        return f"line {self.line}, cols {self.col_start}-{self.col_end}"


class ParseError(ValueError):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{message} ({span})")
        self.message = message
        self.span = span


_AXIS_NAMES = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}
_AXIS_LETTER = {X_AXIS: "x", Y_AXIS: "y", Z_AXIS: "z"}

_ROOT_SUGAR = {
    "x": (X_AXIS, Fraction(1)),
    "y": (Y_AXIS, Fraction(1)),
    "z": (Z_AXIS, Fraction(1)),
    "s": (Z_AXIS, Fraction(1, 2)),
    "sdg": (Z_AXIS, Fraction(-1, 2)),
    "t": (Z_AXIS, Fraction(1, 4)),
    "tdg": (Z_AXIS, Fraction(-1, 4)),
    "v": (X_AXIS, Fraction(1, 2)),
    "vdg": (X_AXIS, Fraction(-1, 2)),
    "w": (X_AXIS, Fraction(1, 4)),
    "wdg": (X_AXIS, Fraction(-1, 4)),
}


@dataclass(frozen=True)
class _Token:
    text: str
    span: SourceSpan


def _tokenize_line(text: str, lineno: int) -> list[_Token]:
    hash_pos = text.find("#")
    if hash_pos >= 0:
        text = text[:hash_pos]
    tokens = []
    col = 0
    for part in text.split():
        col = text.index(part, col)
        tokens.append(_Token(part, SourceSpan(lineno, col + 1, col + len(part))))
        col += len(part)
    return tokens


def _parse_int(tok: _Token, what: str) -> int:
    try:
        return int(tok.text, 10)
    except ValueError:
        raise ParseError(f"expected {what}, got {tok.text!r}", tok.span) from None


def _parse_axis(tok: _Token) -> int:
    axis = _AXIS_NAMES.get(tok.text)
    if axis is None:
        raise ParseError(f"expected axis x, y or z, got {tok.text!r}", tok.span)
    return axis


def _parse_fraction(tok: _Token) -> Fraction:
    num, slash, den = tok.text.partition("/")
    try:
        if slash:
            return Fraction(int(num, 10), int(den, 10))
        return Fraction(int(num, 10))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"expected exponent like m/k, got {tok.text!r}", tok.span) from None


def _parse_controls(tokens: list[_Token], start: int) -> tuple[tuple[int, bool], ...]:
    controls = []
    i = start
    while i < len(tokens):
        if tokens[i].text != "ctrl":
            raise ParseError(f"expected 'ctrl', got {tokens[i].text!r}", tokens[i].span)
        if i + 1 >= len(tokens):
            raise ParseError("control missing its line argument", tokens[i].span)
        spec = tokens[i + 1]
        if not spec.text or spec.text[0] not in "+-":
            raise ParseError(
                f"control must start with + or -, got {spec.text!r}", spec.span
            )
        line = _parse_int(_Token(spec.text[1:], spec.span), "a line number")
        controls.append((line, spec.text[0] == "+"))
        i += 2
    return tuple(controls)


def _line_span(tokens: list[_Token]) -> SourceSpan:
    return SourceSpan(tokens[0].span.line, tokens[0].span.col_start, tokens[-1].span.col_end)


def _need(tokens: list[_Token], idx: int, what: str) -> _Token:
    if idx >= len(tokens):
        last = tokens[-1]
        raise ParseError(f"missing {what}", last.span)
    return tokens[idx]


def _parse_gate(tokens: list[_Token]) -> Gate:
    head = tokens[0]
    name = head.text
    op: NamedOp
    if name == "root":
        axis = _parse_axis(_need(tokens, 1, "axis"))
        exp = _parse_fraction(_need(tokens, 2, "exponent"))
        target = _parse_int(_need(tokens, 3, "target line"), "a line number")
        op = PauliRoot(axis, exp)
        controls = _parse_controls(tokens, 4)
    elif name == "trans":
        a = _parse_axis(_need(tokens, 1, "first axis"))
        b = _parse_axis(_need(tokens, 2, "second axis"))
        target = _parse_int(_need(tokens, 3, "target line"), "a line number")
        op = Translation(a, b)
        controls = _parse_controls(tokens, 4)
    elif name == "neg":
        axis = _parse_axis(_need(tokens, 1, "axis"))
        angle_tok = _need(tokens, 2, "angle")
        try:
            theta = float(angle_tok.text)
        except ValueError:
            raise ParseError(
                f"expected an angle, got {angle_tok.text!r}", angle_tok.span
            ) from None
        if not math.isfinite(theta):
            raise ParseError("angle must be finite", angle_tok.span)
        target = _parse_int(_need(tokens, 3, "target line"), "a line number")
        op = Negator(axis, theta)
        controls = _parse_controls(tokens, 4)
    elif name == "h":
        target = _parse_int(_need(tokens, 1, "target line"), "a line number")
        op = Translation(X_AXIS, Z_AXIS)
        controls = _parse_controls(tokens, 2)
    elif name == "cx":
        ctrl = _parse_int(_need(tokens, 1, "control line"), "a line number")
        target = _parse_int(_need(tokens, 2, "target line"), "a line number")
        op = PauliRoot(X_AXIS, Fraction(1))
        controls = ((ctrl, True),) + _parse_controls(tokens, 3)
    elif name in _ROOT_SUGAR:
        axis, exp = _ROOT_SUGAR[name]
        target = _parse_int(_need(tokens, 1, "target line"), "a line number")
        op = PauliRoot(axis, exp)
        controls = _parse_controls(tokens, 2)
    else:
        raise ParseError(f"unknown gate {name!r}", head.span)
    return Gate(op, target, controls)


def parse(source: str) -> Circuit:
    lines = source.split("\n")
    gates: list[Gate] = []
    gate_spans: list[SourceSpan] = []
    n = None
    for lineno, raw in enumerate(lines, start=1):
        tokens = _tokenize_line(raw, lineno)
        if not tokens:
            continue
        if n is None:
            if tokens[0].text != "qubits":
                raise ParseError("file must start with a 'qubits N' header", tokens[0].span)
            count_tok = _need(tokens, 1, "qubit count")
            n = _parse_int(count_tok, "a qubit count")
            if n < 1:
                raise ParseError(f"qubit count must be >= 1, got {n}", count_tok.span)
            if len(tokens) > 2:
                raise ParseError("unexpected text after qubit count", tokens[2].span)
            continue
        if tokens[0].text == "qubits":
            raise ParseError("duplicate 'qubits' header", tokens[0].span)
        gates.append(_parse_gate(tokens))
        gate_spans.append(_line_span(tokens))
    if n is None:
        raise ParseError("empty file; expected a 'qubits N' header", SourceSpan(1, 1, 1))
    circuit = Circuit(n, tuple(gates))
    problems = validate(circuit)
    if problems:
        first = problems[0]
        idx = int(first.split()[1].rstrip(":")) if first.startswith("gate ") else 0
        raise ParseError(first, gate_spans[idx])
    return circuit


_SUGAR_NAMES = {(axis, exp): name for name, (axis, exp) in _ROOT_SUGAR.items()}


def format_gate(g: Gate, sugar: bool = False) -> str:
    op = g.op
    head = None
    if sugar and isinstance(op, PauliRoot):
        if (
            op.axis == X_AXIS
            and op.exp == 1
            and len(g.controls) == 1
            and g.controls[0][1]
        ):
            return f"cx {g.controls[0][0]} {g.target}"
        name = _SUGAR_NAMES.get((op.axis, op.exp))
        if name is not None:
            head = name
    if sugar and isinstance(op, Translation) and {op.a, op.b} == {X_AXIS, Z_AXIS}:
        head = "h"
    if head is None:
        if isinstance(op, PauliRoot):
            head = f"root {_AXIS_LETTER[op.axis]} {op.exp.numerator}/{op.exp.denominator}"
        elif isinstance(op, Translation):
            head = f"trans {_AXIS_LETTER[op.a]} {_AXIS_LETTER[op.b]}"
        else:
            head = f"neg {_AXIS_LETTER[op.axis]} {op.theta!r}"
    parts = [head, str(g.target)]
    for line, pol in g.controls:
        parts.append(f"ctrl {'+' if pol else '-'}{line}")
    return " ".join(parts)


def print_circuit(c: Circuit, sugar: bool = False) -> str:
    lines = [f"qubits {c.n}"]
    lines.extend(format_gate(g, sugar) for g in c.gates)
    return "\n".join(lines) + "\n"
