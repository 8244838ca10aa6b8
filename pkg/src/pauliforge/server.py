"""JSON-over-HTTP surface for derivation sessions.

Circuits travel as `.prc` text plus per-gate stage indices so a client can
draw the gate grid without recomputing any metric. Errors are
{code, message, span?} with status 400 (bad input), 404 (unknown session or
builtin), or 409 (inapplicable move, empty undo/redo).
"""

from __future__ import annotations

from importlib import resources

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .circuit import Circuit, stages, stats
from .passes import (
    BUILTIN_NAMES,
    ScriptStep,
    builtin,
    derive_amy_toffoli,
    derive_full_adder,
    insert_pair_step,
    rule_step,
    swap_conjugate_step,
    swap_step,
)
from .rules import RULE_IDS, RuleParams
from .session import (
    InvalidCircuitError,
    MoveConflictError,
    SessionError,
    SessionStore,
    SoundnessError,
    UnknownSessionError,
    enumerate_moves,
)
from .text import ParseError, format_gate, parse, print_circuit

_STATUS = {
    InvalidCircuitError: 400,
    UnknownSessionError: 404,
    MoveConflictError: 409,
    SoundnessError: 500,
}


def _circuit_payload(c: Circuit) -> dict:
    return {"prc": print_circuit(c), "n": c.n, "stages": stages(c)}


def _state_payload(c: Circuit) -> dict:
    return {"stats": stats(c).as_dict(), "circuit": _circuit_payload(c), "equivalent": True}


def _error(code: str, message: str, status: int, span=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if span is not None:
        body["span"] = {
            "line": span.line,
            "col_start": span.col_start,
            "col_end": span.col_end,
        }
    return JSONResponse(body, status_code=status)


_SCRIPTS = {
    "amy-toffoli": derive_amy_toffoli,
    "full-adder": derive_full_adder,
}


def _step_payload(step: ScriptStep) -> dict:
    """Wire form of a script step; manual moves ride in the rule slot."""
    if step.kind == "rule":
        return {
            "rule": step.rewrite.rule,
            "anchor": step.rewrite.anchor,
            "params": step.rewrite.params.to_dict(),
        }
    if step.kind == "swap_adjacent":
        return {"rule": "swap-adjacent", "anchor": step.index, "params": {}}
    if step.kind == "insert_pair":
        return {
            "rule": "insert-pair",
            "anchor": step.index,
            "params": {"gate": format_gate(step.gate)},
        }
    return {
        "rule": "swap-conjugate",
        "anchor": step.index,
        "params": {"anchor2": step.index2},
    }


def _parse_step(body: dict, n: int) -> ScriptStep:
    rule = body.get("rule")
    anchor = body.get("anchor")
    if not isinstance(anchor, int) or anchor < 0:
        raise InvalidCircuitError("anchor must be a non-negative integer")
    params = body.get("params") or {}
    if rule == "swap-adjacent":
        return swap_step(anchor)
    if rule == "insert-pair":
        gate_text = params.get("gate")
        if not isinstance(gate_text, str):
            raise InvalidCircuitError("insert-pair needs a 'gate' param")
        gate = parse(f"qubits {n}\n{gate_text}\n").gates[0]
        return insert_pair_step(anchor, gate)
    if rule == "swap-conjugate":
        anchor2 = params.get("anchor2")
        if not isinstance(anchor2, int):
            raise InvalidCircuitError("swap-conjugate needs an integer 'anchor2' param")
        return swap_conjugate_step(anchor, anchor2)
    if rule not in RULE_IDS:
        raise InvalidCircuitError(f"unknown rule {rule!r}")
    try:
        rule_params = RuleParams.from_dict(params)
    except (TypeError, ValueError, KeyError) as exc:
        raise InvalidCircuitError(f"bad rule params: {exc}") from None
    return rule_step(rule, anchor, **_params_kwargs(rule_params))


def _params_kwargs(p: RuleParams) -> dict:
    default = RuleParams()
    return {
        name: getattr(p, name)
        for name in p.__dataclass_fields__
        if getattr(p, name) != getattr(default, name)
    }


def create_app(store: SessionStore | None = None) -> FastAPI:
    app = FastAPI(title="pauli-forge sessions")
    sessions = store if store is not None else SessionStore()

    @app.exception_handler(SessionError)
    async def session_error(request: Request, exc: SessionError):
        return _error(exc.code, str(exc), _STATUS.get(type(exc), 400))

    @app.exception_handler(ParseError)
    async def parse_error(request: Request, exc: ParseError):
        return _error("parse-error", exc.message, 400, exc.span)

    @app.post("/sessions")
    async def open_session(body: dict):
        text = body.get("circuit")
        if not isinstance(text, str):
            raise InvalidCircuitError("body must contain prc text under 'circuit'")
        session = sessions.open(parse(text))
        return {"id": session.id, **_state_payload(session.current)}

    @app.get("/sessions/{sid}/moves")
    async def moves(sid: str):
        session = sessions.get(sid)
        return [
            {
                "rule": m.step.rule,
                "anchor": m.step.anchor,
                "params": m.step.params.to_dict(),
                "delta": m.delta,
            }
            for m in enumerate_moves(session.current)
        ]

    @app.post("/sessions/{sid}/apply")
    async def apply_move(sid: str, body: dict):
        session = sessions.get(sid)
        after = session.apply(_parse_step(body, session.current.n))
        return _state_payload(after)

    @app.post("/sessions/{sid}/undo")
    async def undo(sid: str):
        return _state_payload(sessions.get(sid).undo())

    @app.post("/sessions/{sid}/redo")
    async def redo(sid: str):
        return _state_payload(sessions.get(sid).redo())

    @app.get("/builtins")
    async def builtins():
        return {name: print_circuit(builtin(name)) for name in BUILTIN_NAMES}

    @app.get("/scripts")
    async def scripts():
        return sorted(_SCRIPTS)

    @app.get("/scripts/{name}")
    async def script(name: str):
        maker = _SCRIPTS.get(name)
        if maker is None:
            raise UnknownSessionError(f"no recorded script {name!r}")
        s = maker()
        return {
            "name": s.name,
            "initial": print_circuit(s.initial),
            "steps": [_step_payload(step) for step in s.steps],
        }

    static = resources.files("pauliforge") / "static"
    if static.is_dir():
        app.mount("/", StaticFiles(directory=str(static), html=True), name="static")
    return app
