"""In-memory derivation sessions: enumerate applicable rewrites, apply them
with equivalence re-verification, and move a cursor for undo/redo.

Sessions are independent; each one serializes its own mutations with a lock.
The store keeps at most a fixed number of sessions and evicts the least
recently used.
"""

from __future__ import annotations

import secrets
import threading
from collections import OrderedDict
from dataclasses import dataclass

from .circuit import Circuit, CircuitStats, stats, validate
from .passes import ScriptError, ScriptStep, apply_step
from .rules import RULE_IDS, RewriteStep, RuleParams, applicable, apply as apply_rule
from .semantics import MAX_DENSE_QUBITS, equivalent

DEFAULT_CAPACITY = 64


class SessionError(Exception):
    """Base class; code picks the transport mapping."""

    code = "error"


class InvalidCircuitError(SessionError):
    code = "invalid-circuit"


class UnknownSessionError(SessionError):
    code = "unknown-session"


class MoveConflictError(SessionError):
    """Inapplicable step (stale anchor or wrong params) or empty undo/redo."""

    code = "move-conflict"


class SoundnessError(SessionError):
    """A rule application broke equivalence; indicates a rule bug."""

    code = "soundness"


@dataclass(frozen=True)
class MovePreview:
    step: RewriteStep
    delta: dict[str, int]


def _delta(before: CircuitStats, after: CircuitStats) -> dict[str, int]:
    return {
        "depth": after.depth - before.depth,
        "t_depth": after.t_depth - before.t_depth,
        "gate_count": after.gate_count - before.gate_count,
    }


def enumerate_moves(c: Circuit) -> list[MovePreview]:
    """Every (rule, anchor) applicable with default parameters, with the
    stats change applying it would cause."""
    before = stats(c)
    out = []
    for anchor in range(len(c.gates)):
        for rule in RULE_IDS:
            params = RuleParams()
            ok, _ = applicable(rule, c, anchor, params)
            if not ok:
                continue
            step = RewriteStep(rule, anchor, params)
            out.append(MovePreview(step, _delta(before, stats(apply_rule(step, c)))))
    return out


class Session:
    def __init__(self, sid: str, initial: Circuit):
        self.id = sid
        self.initial = initial
        self.history: list[tuple[ScriptStep, Circuit]] = []
        self.cursor = 0  # number of applied steps currently visible
        self.lock = threading.Lock()

    @property
    def current(self) -> Circuit:
        return self.history[self.cursor - 1][1] if self.cursor else self.initial

    def apply(self, step: ScriptStep) -> Circuit:
        with self.lock:
            base = self.current
            try:
                after = apply_step(base, step)
            except ScriptError as exc:
                raise MoveConflictError(str(exc)) from None
            same, _ = equivalent(self.initial, after)
            if not same:
                raise SoundnessError(
                    f"applying {step.describe()} broke equivalence with the initial circuit"
                )
            del self.history[self.cursor :]
            self.history.append((step, after))
            self.cursor += 1
            return after

    def undo(self) -> Circuit:
        with self.lock:
            if self.cursor == 0:
                raise MoveConflictError("nothing to undo")
            self.cursor -= 1
            return self.current

    def redo(self) -> Circuit:
        with self.lock:
            if self.cursor == len(self.history):
                raise MoveConflictError("nothing to redo")
            self.cursor += 1
            return self.current


class SessionStore:
    def __init__(self, capacity: int = DEFAULT_CAPACITY):
        self.capacity = capacity
        self._sessions: OrderedDict[str, Session] = OrderedDict()
        self._lock = threading.Lock()

    def open(self, c: Circuit) -> Session:
        if c.n > MAX_DENSE_QUBITS:
            raise InvalidCircuitError(f"at most {MAX_DENSE_QUBITS} qubits supported")
        problems = validate(c)
        if problems:
            raise InvalidCircuitError("; ".join(problems))
        session = Session(secrets.token_hex(8), c)
        with self._lock:
            self._sessions[session.id] = session
            while len(self._sessions) > self.capacity:
                self._sessions.popitem(last=False)
        return session

    def get(self, sid: str) -> Session:
        with self._lock:
            session = self._sessions.get(sid)
            if session is None:
                raise UnknownSessionError(f"no session {sid!r}")
            self._sessions.move_to_end(sid)
            return session
