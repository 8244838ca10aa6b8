"""Command-line front door.

Exit status: 0 success or verified, 1 verification failed, 2 usage or parse
error, 3 resource limit hit. Diagnostics go to stderr, results to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import clifford
from .algebra import X_AXIS, Y_AXIS, Z_AXIS
from .circuit import Circuit, stats
from .passes import (
    BUILTIN_NAMES,
    builtin,
    derive_amy_toffoli,
    derive_full_adder,
    expand_ncv,
    ncv_to_clifford_t,
    run_script,
    toffoli_family,
    translate_library,
)
from .rules import RULE_IDS, check_soundness
from .semantics import equivalent
from .text import ParseError, parse, print_circuit

_AXIS_BY_LETTER = {"x": X_AXIS, "y": Y_AXIS, "z": Z_AXIS}


class _UsageError(Exception):
    pass


def _read_circuit(path: str) -> Circuit:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return parse(f.read())
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise _UsageError(f"{path}: {exc}") from None


def _write_circuit(c: Circuit, path: str | None) -> None:
    text = print_circuit(c)
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)


def _cmd_stats(args) -> int:
    st = stats(_read_circuit(args.file))
    if args.json:
        print(json.dumps(st.as_dict()))
    else:
        print(f"depth={st.depth} t_depth={st.t_depth} gate_count={st.gate_count}")
        for name, count in sorted(st.counts.items()):
            print(f"  {name}: {count}")
        if st.controlled_t_warning:
            print("  warning: controlled quarter roots present; t_depth excludes them")
    return 0


def _cmd_verify(args) -> int:
    a = _read_circuit(args.a)
    b = _read_circuit(args.b)
    same, phase = equivalent(a, b)
    if not same:
        print("not equivalent")
        return 1
    print(f"equivalent, phase {phase.real:+.9f}{phase.imag:+.9f}j")
    return 0


def _cmd_map(args) -> int:
    c = _read_circuit(args.file)
    name = getattr(args, "pass")
    if name == "expand-ncv":
        out = expand_ncv(c)
    elif name == "ncv-to-clifford-t":
        out = ncv_to_clifford_t(c)
    elif name.startswith("translate:"):
        axis = _AXIS_BY_LETTER.get(name.partition(":")[2])
        if axis is None:
            raise _UsageError(f"bad translation axis in {name!r}")
        out = translate_library(c, axis)
    else:
        raise _UsageError(f"unknown pass {name!r}")
    same, _ = equivalent(c, out)
    if not same:
        print("mapped circuit failed re-verification", file=sys.stderr)
        return 1
    _write_circuit(out, args.output)
    return 0


def _cmd_derive(args) -> int:
    if args.what == "toffoli":
        out = toffoli_family(args.a, args.b, args.c)
    elif args.what == "amy-toffoli":
        out = run_script(derive_amy_toffoli())[-1]
    elif args.what == "full-adder":
        out = run_script(derive_full_adder())[-1]
    else:  # w-adder
        final = run_script(derive_full_adder())[-1]
        out = translate_library(final, X_AXIS)
        same, _ = equivalent(final, out)
        if not same:
            print("translation failed re-verification", file=sys.stderr)
            return 1
    _write_circuit(out, args.output)
    return 0


def _cmd_rules(args) -> int:
    rules = [args.rule] if args.rule else list(RULE_IDS)
    if args.rule and args.rule not in RULE_IDS:
        raise _UsageError(f"unknown rule {args.rule!r}")
    reports = {}
    failed = False
    for rule in rules:
        report = check_soundness(rule, trials=args.trials, seed=args.seed)
        reports[rule] = report
        if not report.passed:
            failed = True
        if not args.json:
            status = "ok" if report.passed else f"{len(report.counterexamples)} counterexamples"
            print(f"{rule}: {report.trials} trials, {status}")
    if args.json:
        print(json.dumps({rule: r.as_dict() for rule, r in reports.items()}))
    return 1 if failed else 0


def _cmd_clifford(args) -> int:
    if args.what == "identities":
        all_ok = True
        for name, ok in clifford.clifford_identities_check():
            print(f"{name}: {'pass' if ok else 'FAIL'}")
            all_ok = all_ok and ok
        return 0 if all_ok else 1
    labels, gens = clifford.generator_set(args.set, args.qubits)
    try:
        closure = clifford.bfs_closure(gens, labels=labels)
    except clifford.ClosureOverflowError as exc:
        print(str(exc), file=sys.stderr)
        return 3
    print(f"order {closure.order}")
    for word in closure.words[:8]:
        print(f"  {word}")
    return 0


def _cmd_builtin(args) -> int:
    if args.name not in BUILTIN_NAMES:
        raise _UsageError(f"unknown builtin {args.name!r}; have {', '.join(BUILTIN_NAMES)}")
    _write_circuit(builtin(args.name), args.output)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pauli-forge")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="depth, T-depth and gate counts of a circuit file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_stats)

    p = sub.add_parser("verify", help="equivalence of two circuit files up to phase")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("map", help="run a mapping pass over a circuit file")
    p.add_argument("file")
    p.add_argument("--pass", required=True, metavar="PASS",
                   help="expand-ncv | ncv-to-clifford-t | translate:<x|y|z>")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_map)

    p = sub.add_parser("derive", help="run a recorded or parametrized derivation")
    p.add_argument("what", choices=("toffoli", "amy-toffoli", "full-adder", "w-adder"))
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--c", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_derive)

    p = sub.add_parser("rules", help="randomized soundness checks of the rule catalog")
    p.add_argument("action", choices=("check",))
    p.add_argument("--rule")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_rules)

    p = sub.add_parser("clifford", help="group identities and generator closures")
    p.add_argument("what", choices=("identities", "closure"))
    p.add_argument("--set", choices=("paper", "standard", "negator"), default="paper")
    p.add_argument("--qubits", type=int, choices=(1, 2), default=1)
    p.set_defaults(fn=_cmd_clifford)

    p = sub.add_parser("builtin", help="emit a named library circuit")
    p.add_argument("name")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_builtin)

    p = sub.add_parser("serve", help="serve the HTTP session API")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.set_defaults(fn=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.fn(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
