"""Command-line front end.

Exit codes: 0 ok, 1 a claim or certificate failed, 2 bad input,
3 a size cap was exceeded, 4 the module is zero (degenerate input).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .cache import Calculator, ResultCache, default_cache_path
from .claims import CLAIM_IDS, K_MAX, report_csv, report_json, report_table, run_verification, summarize
from .errors import CapExceededError, DegenerateError, InvalidInputError
from .invariants import INVARIANTS, check_certificate, family_ideal, field_name, parse_field
from .sdepth import DEFAULT_CAP

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_DEGENERATE = 4

log = logging.getLogger("sqfdepth")


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _add_instance(p: argparse.ArgumentParser, families: list[str]) -> None:
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)


def _add_engine(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="q", help="q for the rationals or p:<prime>")
    p.add_argument("--cap-poset", type=_positive, default=DEFAULT_CAP, help="largest characteristic poset to search")
    p.add_argument("--cache", type=Path, default=None, help="result cache file (default: $SQFDEPTH_CACHE_DIR/results.json)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqfdepth", description="Depth and Stanley depth of edge ideals of path and cycle powers.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="print the edge ideal in canonical JSON")
    _add_instance(p, ["path", "cycle"])
    p.add_argument("--graph", action="store_true", help="print the graph instead of the ideal")

    p = sub.add_parser("invariant", help="compute one invariant")
    p.add_argument("target", choices=INVARIANTS)
    _add_instance(p, ["path", "cycle", "cycle-vs-path"])
    _add_engine(p)
    p.add_argument("--certificate", type=Path, help="write the certificate to this JSON file")

    p = sub.add_parser("verify", help="check the closed forms and bounds over a grid")
    p.add_argument("--n-max", type=int, default=None, help="largest n for every claim (default: per-claim grids)")
    p.add_argument("--k-max", type=_positive, default=K_MAX)
    p.add_argument("--claims", nargs="+", default=None, metavar="ID", help="claim ids or prefixes; see --list-claims")
    p.add_argument("--list-claims", action="store_true")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--format", choices=["json", "csv", "table"], default="json")
    _add_engine(p)

    p = sub.add_parser("validate-certificate", help="re-check a certificate file written by 'invariant'")
    p.add_argument("path", type=Path)
    p.add_argument("--cap-poset", type=_positive, default=DEFAULT_CAP)
    return parser


def _open_cache(args) -> ResultCache | None:
    path = args.cache or default_cache_path()
    return ResultCache(path) if path else None


def cmd_gen(args) -> int:
    if args.graph:
        from .invariants import family_graph

        print(family_graph(args.family, args.n, args.k).to_json())
    else:
        print(family_ideal(args.family, args.n, args.k).to_json())
    return EXIT_OK


def cmd_invariant(args) -> int:
    ch = parse_field(args.field)
    cache = _open_cache(args)
    calc = Calculator(ch, args.cap_poset, cache)
    result = calc.get(args.target, args.family, args.n, args.k)
    if cache is not None:
        cache.save()
    print(result.value)
    if args.certificate:
        doc = {
            "invariant": args.target,
            "family": args.family,
            "n": args.n,
            "k": args.k,
            "field": field_name(ch),
            "value": result.value,
            "certificate": result.certificate,
        }
        args.certificate.write_text(json.dumps(doc, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.list_claims:
        print("\n".join(CLAIM_IDS))
        return EXIT_OK
    if args.claims:
        unknown = [c for c in args.claims if not any(cid == c or cid.startswith(c + "-") for cid in CLAIM_IDS)]
        if unknown:
            raise InvalidInputError(f"unknown claims: {', '.join(unknown)}")
    if args.n_max is not None and args.n_max < 2:
        raise InvalidInputError("--n-max must be at least 2")
    cache = _open_cache(args)
    calc = Calculator(parse_field(args.field), args.cap_poset, cache)
    checks = run_verification(args.n_max, args.k_max, args.claims, calc)
    if cache is not None:
        cache.save()
    render = {"json": report_json, "csv": report_csv, "table": report_table}[args.format]
    text = render(checks)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    s = summarize(checks)
    print(f"pass {s['pass']} fail {s['fail']} skipped {s['skipped']}", file=sys.stderr)
    return EXIT_FAIL if s["fail"] else EXIT_OK


def cmd_validate(args) -> int:
    try:
        doc = json.loads(args.path.read_text())
        fields = [doc[f] for f in ("invariant", "family", "n", "k", "field", "value", "certificate")]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise InvalidInputError(f"unreadable certificate file: {exc}") from exc
    invariant, family, n, k, field, value, cert = fields
    ok = check_certificate(invariant, family, n, k, value, cert, parse_field(field), args.cap_poset)
    print("valid" if ok else "invalid")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"gen": cmd_gen, "invariant": cmd_invariant, "verify": cmd_verify, "validate-certificate": cmd_validate}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InvalidInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DegenerateError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
