"""Command-line front end.

Commands: canonicalize, decide, witness, verify-witness, construct.
Exit codes: 0 success / complement exists, 1 complement does not exist,
2 parse or validation error, 3 undecided within the search bound,
4 verification failure.

Set-description files are flat text, one ``key = value`` per line,
``#`` starts a comment.  A raw description uses the keys period, residues,
threshold, extras, orientation (below/above); a canonical description uses
m, x, y0, y1, shift.  Integer lists are comma-separated, ascending.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Callable, Optional

from . import criteria, generator, witness as witness_mod
from .errors import MinaddError, ParseError, ValidationError
from .residues import ResidueSubset
from .sets import ABOVE, BELOW, CanonicalSet, RawSet, canonicalize, reflect

EXIT_EXISTS = 0
EXIT_NOT_EXISTS = 1
EXIT_BAD_INPUT = 2
EXIT_UNKNOWN = 3
EXIT_VERIFY_FAILED = 4

RAW_KEYS = {"period", "residues", "threshold", "extras", "orientation"}
CANONICAL_KEYS = {"m", "x", "y0", "y1", "shift"}


def _parse_int_list(value: str, field: str, line_no: int) -> list[int]:
    value = value.strip()
    if not value:
        return []
    try:
        return [int(tok) for tok in value.split(",")]
    except ValueError as exc:
        raise ParseError(f"line {line_no}: field {field!r}: {exc}") from exc


def parse_set_file(text: str) -> dict:
    """Parse a flat set-description file into a field dict."""
    fields: dict = {}
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {line_no}: expected 'key = value', got {line!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in fields:
            raise ParseError(f"line {line_no}: duplicate field {key!r}")
        if key in ("period", "threshold", "m", "shift"):
            try:
                fields[key] = int(value)
            except ValueError as exc:
                raise ParseError(f"line {line_no}: field {key!r}: {exc}") from exc
        elif key in ("residues", "extras", "x", "y0", "y1"):
            fields[key] = _parse_int_list(value, key, line_no)
        elif key == "orientation":
            if value not in (BELOW, ABOVE):
                raise ParseError(
                    f"line {line_no}: orientation must be below or above"
                )
            fields[key] = value
        else:
            raise ParseError(f"line {line_no}: unknown field {key!r}")
    if not fields:
        raise ParseError("empty set description")
    if "period" in fields and "m" in fields:
        raise ParseError("mixed raw and canonical fields in one file")
    return fields


def load_raw(fields: dict) -> RawSet:
    for key in ("period", "residues", "threshold"):
        if key not in fields:
            raise ParseError(f"raw description missing field {key!r}")
    return RawSet(
        fields["period"],
        ResidueSubset.of(fields["period"], fields["residues"]),
        fields["threshold"],
        tuple(fields.get("extras", [])),
        fields.get("orientation", BELOW),
    )


def load_canonical(fields: dict) -> CanonicalSet:
    if "m" not in fields or "x" not in fields:
        raise ParseError("canonical description missing field 'm' or 'x'")
    return CanonicalSet(
        fields["m"],
        ResidueSubset.of(fields["m"], fields["x"]),
        tuple(fields.get("y0", [])),
        tuple(fields.get("y1", [])),
        fields.get("shift", 0),
    )


def load_set(path: str) -> tuple[CanonicalSet, dict, bool]:
    """Read a set file; returns (canonical set, input echo, was_reflected)."""
    with open(path) as fh:
        fields = parse_set_file(fh.read())
    if "m" in fields:
        return load_canonical(fields), fields, False
    raw = load_raw(fields)
    reflected = raw.orientation == ABOVE
    if reflected:
        raw = reflect(raw)
    return canonicalize(raw), fields, reflected


def _emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
        return
    _emit_text(record)


def _emit_text(record: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for key in sorted(record):
        value = record[key]
        if isinstance(value, dict):
            print(f"{pad}{key}:")
            _emit_text(value, indent + 1)
        else:
            print(f"{pad}{key} = {value}")


def _run_record(command: str, inputs: dict, config: dict, result: dict,
                started: float) -> dict:
    return {
        "command": command,
        "input": inputs,
        "config": config,
        "result": result,
        "timing": {"wall_time": time.perf_counter() - started},
    }


def _search_config(args) -> criteria.SearchConfig:
    cfg = criteria.SearchConfig()
    if getattr(args, "t_max", None) is not None:
        cfg.t_max = args.t_max
    if getattr(args, "exhaustive_limit", None) is not None:
        cfg.exhaustive_limit = args.exhaustive_limit
    if getattr(args, "workers", None) is not None:
        cfg.worker_count = args.workers
    return cfg


def cmd_canonicalize(args) -> int:
    started = time.perf_counter()
    s, fields, reflected = load_set(args.file)
    result = {"canonical": s.to_dict(), "reflected": reflected}
    _emit(_run_record("canonicalize", fields, {}, result, started), args.format)
    return EXIT_EXISTS


def cmd_decide(args) -> int:
    started = time.perf_counter()
    s, fields, reflected = load_set(args.file)
    cfg = _search_config(args)
    verdict = criteria.decide(s, cfg)
    result = {
        "canonical": s.to_dict(),
        "reflected": reflected,
        "verdict": verdict.to_dict(),
    }
    config = {
        "t_max": cfg.t_max,
        "exhaustive_limit": cfg.exhaustive_limit,
        "workers": cfg.worker_count,
    }
    _emit(_run_record("decide", fields, config, result, started), args.format)
    return {
        criteria.Outcome.EXISTS: EXIT_EXISTS,
        criteria.Outcome.NOT_EXISTS: EXIT_NOT_EXISTS,
        criteria.Outcome.UNKNOWN: EXIT_UNKNOWN,
    }[verdict.outcome]


def _parse_window(spec: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = spec.split(":", 1)
        return int(lo_s), int(hi_s)
    except ValueError as exc:
        raise ParseError(f"bad window {spec!r}, expected LO:HI") from exc


def cmd_witness(args) -> int:
    started = time.perf_counter()
    s, fields, _ = load_set(args.file)
    lo, hi = _parse_window(args.window)
    cfg = _search_config(args)
    verdict = criteria.decide(s, cfg)
    if verdict.certificate is None:
        result = {"canonical": s.to_dict(), "verdict": verdict.to_dict()}
        _emit(_run_record("witness", fields, {}, result, started), args.format)
        if verdict.outcome is criteria.Outcome.EXISTS:
            print("no certificate on this branch; witness unavailable",
                  file=sys.stderr)
            return EXIT_VERIFY_FAILED
        return (EXIT_NOT_EXISTS
                if verdict.outcome is criteria.Outcome.NOT_EXISTS
                else EXIT_UNKNOWN)
    w = witness_mod.build_witness(s, verdict.certificate, lo, hi)
    cov = witness_mod.verify_coverage(s, w)
    mini = witness_mod.verify_local_minimality(s, w)
    result = {
        "canonical": s.to_dict(),
        "verdict": verdict.to_dict(),
        "witness": w.to_dict(),
        "coverage": {"ok": cov.ok, "failures": list(cov.failures)},
        "minimality": {"ok": mini.ok, "failures": list(mini.failures)},
    }
    _emit(_run_record("witness", fields, {"window": args.window}, result,
                      started), args.format)
    return EXIT_EXISTS if cov.ok and mini.ok else EXIT_VERIFY_FAILED


def cmd_verify_witness(args) -> int:
    started = time.perf_counter()
    try:
        with open(args.file) as fh:
            record = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"witness record is not valid JSON: {exc}") from exc
    try:
        payload = record.get("result", record)
        s = CanonicalSet.from_dict(payload["canonical"])
        w = witness_mod.WitnessWindow.from_dict(payload["witness"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"witness record missing field: {exc}") from exc
    cov = witness_mod.verify_coverage(s, w)
    mini = witness_mod.verify_local_minimality(s, w)
    result = {
        "coverage": {"ok": cov.ok, "failures": list(cov.failures)},
        "minimality": {"ok": mini.ok, "failures": list(mini.failures)},
    }
    _emit(_run_record("verify-witness", {"file": args.file}, {}, result,
                      started), args.format)
    return EXIT_EXISTS if cov.ok and mini.ok else EXIT_VERIFY_FAILED


def parse_slack_spec(spec: str) -> Callable[[int], int]:
    """'const:N', 'cycle:a,b,c', or a bare integer."""
    if spec.isdigit():
        value = int(spec)
        return lambda i: value
    kind, _, rest = spec.partition(":")
    if kind == "const":
        try:
            value = int(rest)
        except ValueError as exc:
            raise ParseError(f"bad slack spec {spec!r}") from exc
        return lambda i: value
    if kind == "cycle":
        try:
            values = [int(tok) for tok in rest.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad slack spec {spec!r}") from exc
        if not values:
            raise ParseError("cycle slack needs at least one value")
        return lambda i: values[i % len(values)]
    raise ParseError(f"bad slack spec {spec!r}; use const:N or cycle:a,b,c")


def cmd_construct(args) -> int:
    started = time.perf_counter()
    slack_fn = parse_slack_spec(args.slack)
    state = generator.generate(args.steps, slack_fn)
    result: dict = {"state": state.to_dict()}
    ok = True
    if state.steps >= 2:
        window_hi = args.window_hi
        if window_hi is None:
            window_hi = min(-state.c_seq[-2] - 1, 5000)
        report = generator.verify(state, window_hi, period_max=args.period_max)
        result["report"] = {
            "window_hi": window_hi,
            "gaps_ok": report.gaps_ok,
            "coverage_ok": report.coverage_ok,
            "first_uncovered": report.first_uncovered,
            "uniqueness_failures": list(report.uniqueness_failures),
            "periodic_candidates": list(report.periodic_candidates),
        }
        ok = report.ok
    config = {"steps": args.steps, "slack": args.slack}
    _emit(_run_record("construct", {}, config, result, started), args.format)
    return EXIT_EXISTS if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="minadd",
        description="Decide and witness minimal additive complements of "
                    "eventually periodic integer sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("canonicalize", help="normalize a set description")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_canonicalize)

    p = sub.add_parser("decide", help="decide existence of a minimal complement")
    p.add_argument("file")
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--exhaustive-limit", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("witness", help="build and verify a complement window")
    p.add_argument("file")
    p.add_argument("--window", required=True, metavar="LO:HI")
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--exhaustive-limit", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify-witness", help="re-verify a serialized witness")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=cmd_verify_witness)

    p = sub.add_parser(
        "construct",
        help="generate the non-eventually-periodic example set",
    )
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--slack", default="const:1")
    p.add_argument("--window-hi", type=int, default=None)
    p.add_argument("--period-max", type=int, default=50)
    add_format(p)
    p.set_defaults(func=cmd_construct)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except MinaddError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
