"""Command-line front end.

Exit codes: 0 fully certified (or plain success), 1 invalid input,
2 analysis finished with INCONCLUSIVE or BOUNDED_PARTIAL classes,
3 an internal invariant fired.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from .arc import lift
from .companion import build_companion, class_system, find_period
from .errors import HolozerosError, InvalidInput, InvariantViolation, NotMonicForm
from .padic import TOP, PadicContext
from .primes import admissible_primes
from .recurrence import eval_at_negative, eval_upto, format_rational, load_recurrence, validate, zeros_upto
from .strassman import RigidSeries, to_power_coeffs, strassman_bound
from .zeroset import REPORT_SCHEMA, AnalysisOptions, analyze, second_prime_check, verify_report

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="holozeros", description="Zero sets of polynomial-linear recurrences over Q.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, pipeline=True):
        p.add_argument("input", help="recurrence JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--extension-mode", action="store_true", help="allow a non-constant trailing coefficient")
        if pipeline:
            p.add_argument("--prime", type=_positive, help="use this prime instead of the smallest admissible one")
            p.add_argument("--precision", type=_positive, default=16, help="lift depth M (default 16)")

    a = sub.add_parser("analyze", help="decompose the zero set")
    common(a)
    a.add_argument("--horizon", type=_nonneg, default=2000)
    a.add_argument("--max-period", type=_positive, default=10**6, help="cap on block products searched")
    a.add_argument("--max-precision", type=_positive, default=64, help="escalation cap for M")
    a.add_argument("--second-prime-check", action="store_true")

    e = sub.add_parser("eval", help="exact values f(0..N)")
    common(e, pipeline=False)
    e.add_argument("--upto", type=_nonneg, default=20)
    e.add_argument("--at", type=int, help="a single (possibly negative) index")

    z = sub.add_parser("zeros", help="exact zeros up to N")
    common(z, pipeline=False)
    z.add_argument("--upto", type=_nonneg, default=100)

    r = sub.add_parser("arc", help="Mahler coefficients of one class arc")
    common(r)
    r.add_argument("--class", dest="cls", type=_nonneg, required=True)
    r.add_argument("--max-period", type=_positive, default=10**6)

    p = sub.add_parser("primes", help="smallest admissible primes")
    common(p, pipeline=False)
    p.add_argument("--count", type=_positive, default=5)

    v = sub.add_parser("verify", help="check a saved report against the oracle")
    v.add_argument("report", help="report JSON produced by analyze --json")
    v.add_argument("input", help="recurrence JSON file")
    v.add_argument("--upto", type=_nonneg, help="defaults to the report horizon")
    v.add_argument("--json", action="store_true")
    v.add_argument("--extension-mode", action="store_true")
    return ap


def _emit(out, args, payload: dict, text: str):
    if getattr(args, "json", False):
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text + ("\n" if text and not text.endswith("\n") else ""))


def _vjson(v):
    return None if v is TOP else v


def format_decomposition(report) -> str:
    parts = []
    if report.exceptional:
        parts.append("{" + ", ".join(map(str, report.exceptional)) + "}")
    for pr in report.progressions:
        s = f"({pr.modulus}ℕ + {pr.residue})"
        if pr.start >= pr.modulus:
            s += f" ∩ [{pr.start}, ∞)"
        parts.append(s)
    return " ∪ ".join(parts) if parts else "∅"


def _cmd_analyze(args, out) -> int:
    spec = load_recurrence(args.input)
    opts = AnalysisOptions(
        prime=args.prime, M=args.precision, M_cap=max(args.max_precision, args.precision),
        horizon=args.horizon, period_cap=args.max_period, extension_mode=args.extension_mode,
    )
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        report = analyze(spec, opts)
    payload = report.to_json()
    if caught:
        payload["warnings"] = [str(w.message) for w in caught]
    check = None
    if args.second_prime_check:
        check = second_prime_check(spec, report, opts)
        payload["second_prime_check"] = check
    lines = [
        f"prime p = {report.prime}, modulus b = {report.b}, precision p^{report.M + 1}, horizon {report.horizon}",
        f"zero set: {format_decomposition(report)}",
        "classes: " + ", ".join(f"{k} {v}" for k, v in report.summary().items() if v),
    ]
    for c in report.classes:
        if c.status.value in ("BOUNDED_PARTIAL", "INCONCLUSIVE"):
            lines.append(f"  class {c.c}: {c.status.value}, bound {c.strassman.bound}, zeros {list(c.zeros)}")
    if any(c.status.value == "INCONCLUSIVE" for c in report.classes):
        lines.append("  hint: rerun with a larger --max-precision or another --prime")
    if check is not None:
        verdict = "agrees" if check["agree"] else f"differs at {check['differences'][:10]}"
        lines.append(f"second prime {check['prime']} (b = {check['modulus_b']}): {verdict}")
    for w in payload.get("warnings", []):
        lines.append(f"warning: {w}")
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK if report.fully_certified else EXIT_PARTIAL


def _cmd_eval(args, out) -> int:
    spec = validate(load_recurrence(args.input), args.extension_mode)
    if args.at is not None:
        x = eval_upto(spec, args.at)[args.at] if args.at >= 0 else eval_at_negative(spec, args.at)
        _emit(out, args, {"n": args.at, "value": format_rational(x)}, format_rational(x))
        return EXIT_OK
    vals = [format_rational(x) for x in eval_upto(spec, args.upto)]
    _emit(out, args, {"values": vals}, " ".join(vals))
    return EXIT_OK


def _cmd_zeros(args, out) -> int:
    spec = validate(load_recurrence(args.input), args.extension_mode)
    zs = zeros_upto(spec, args.upto)
    _emit(out, args, {"upto": args.upto, "zeros": zs}, " ".join(map(str, zs)))
    return EXIT_OK


def _cmd_arc(args, out) -> int:
    norm = validate(load_recurrence(args.input), args.extension_mode)
    p = args.prime or admissible_primes(norm, 1, extension_mode=args.extension_mode)[0]
    M = args.precision
    sys_ = build_companion(norm, PadicContext(p, M + 2))
    b = find_period(sys_, args.max_period).b
    if args.cls >= b:
        raise InvalidInput(f"class {args.cls} is not a residue mod b = {b}")
    arcs = lift(class_system(sys_, args.cls, b), M)
    ctx = sys_.ctx
    pc = to_power_coeffs(RigidSeries.from_arc(arcs[0]))
    res = strassman_bound(pc.vals, pc.tau, pc.precision)
    payload = {
        "prime": p, "modulus_b": b, "class": args.cls, "precision_exp": M + 1,
        "components": [
            {
                "class": args.cls,
                "component": a.index,
                "precision_exp": a.precision_exp,
                "beta": [str(x) for x in a.beta],
                "valuations": [_vjson(ctx.val(x)) for x in a.beta],
            }
            for a in arcs
        ],
        "power_valuations": [_vjson(v) for v in pc.vals],
        "strassman": res.to_json(),
    }
    lines = [f"p = {p}, b = {b}, class {args.cls}, coefficients mod {p}^{M + 1}"]
    for a in arcs:
        vals = " ".join("-" if ctx.val(x) is TOP else str(ctx.val(x)) for x in a.beta)
        lines.append(f"component {a.index} valuations: {vals}")
    lines.append(f"strassman: {res.status.value}, bound {res.bound}, v* {_vjson(res.min_val)}, tau {_vjson(res.tau)}")
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_primes(args, out) -> int:
    norm = validate(load_recurrence(args.input), args.extension_mode)
    ps = admissible_primes(norm, args.count, extension_mode=args.extension_mode)
    _emit(out, args, {"primes": ps}, " ".join(map(str, ps)))
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    import jsonschema

    with open(args.report, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"report is not valid JSON: {exc}") from None
    try:
        jsonschema.validate(data, REPORT_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise InvalidInput(f"report does not match the schema: {exc.message}") from None
    spec = validate(load_recurrence(args.input), args.extension_mode)
    N = data["horizon"] if args.upto is None else args.upto
    ok, bad = verify_report(data, spec, N)
    text = f"verified up to {N}: " + ("ok" if ok else f"{len(bad)} discrepancies, first at n = {bad[0]['n']}")
    _emit(out, args, {"ok": ok, "upto": N, "discrepancies": bad}, text)
    return EXIT_OK if ok else EXIT_INPUT


COMMANDS = {
    "analyze": _cmd_analyze,
    "eval": _cmd_eval,
    "zeros": _cmd_zeros,
    "arc": _cmd_arc,
    "primes": _cmd_primes,
    "verify": _cmd_verify,
}


def _error(out, err, want_json: bool, kind: str, message: str, code: int) -> int:
    if want_json:
        out.write(json.dumps({"error": {"type": kind, "message": message, "exit_code": code}}, indent=2) + "\n")
    else:
        err.write(f"error ({kind}): {message}\n")
    return code


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        return _error(out, err, want_json, "UsageError", str(exc), EXIT_INPUT)
    except NotMonicForm as exc:
        return _error(out, err, want_json, "NotMonicForm", str(exc), EXIT_INPUT)
    except InvariantViolation as exc:
        return _error(out, err, want_json, type(exc).__name__, str(exc), EXIT_INTERNAL)
    except (InvalidInput, HolozerosError) as exc:
        return _error(out, err, want_json, type(exc).__name__, str(exc), EXIT_INPUT)
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        return _error(out, err, want_json, type(exc).__name__, str(exc), EXIT_INPUT)
    except AssertionError as exc:
        return _error(out, err, want_json, "AssertionError", str(exc), EXIT_INTERNAL)


def main() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(run())
