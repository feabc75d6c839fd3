"""Command-line interface.

Exit codes: 0 verified / true, 1 refuted / false, 2 usage error,
3 resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .classifier import (
    DEFAULT_MAX_ITERATIONS,
    NonFCCertificate,
    certificate_from_json,
    certificate_to_json,
    check_counterexample,
    classify,
    expand_counterexample,
    find_sufficient_d,
    verify,
)
from .covering import FC, CoverIndex
from .enumeration import IRREDUCIBLE, TOP, empty_start, enum_rec, iso_upd, not_fc_covered
from .errors import ResourceCapError, UsageError
from .family import format_family, parse_family
from .linarith import export_lp
from .weights import weight_fn

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

# Characterizations above this size are long runs and must be requested.
EXTENDED_FROM = 6


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _read_json(path: str) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _write(path: str, text: str) -> None:
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _partition(text: str) -> tuple[int, ...]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise UsageError(f"partition list must look like [0,0,1]: {text!r}") from None
    if not isinstance(data, list) or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in data):
        raise UsageError("partition list must be a JSON array of naturals")
    return tuple(data)


# -- subcommands ----------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> int:
    fam = parse_family(args.family, args.n)
    cert = classify(fam, max_iterations=args.max_iterations)
    data = certificate_to_json(cert)
    text = json.dumps(data, indent=1) + "\n"
    if args.out:
        _write(args.out, text)
        print(f"{format_family(fam)}: {cert.status}")
    else:
        sys.stdout.write(text)
    return EXIT_TRUE


def cmd_verify(args: argparse.Namespace) -> int:
    cert = certificate_from_json(_read_json(args.cert))
    ok = verify(cert)
    print(f"{cert.status} certificate for {format_family(cert.family)}: {'valid' if ok else 'INVALID'}")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_enumerate(args: argparse.Namespace) -> int:
    from .characterizer import load

    part = _partition(args.partition)
    if len(part) > args.n + 1:
        raise UsageError(f"partition list longer than n+1 = {args.n + 1}")
    pred = IRREDUCIBLE if args.irreducible else TOP
    if args.not_covered_by:
        chars = load(args.not_covered_by)
        if chars.n != args.n:
            raise UsageError(f"characterization is for n={chars.n}, not {args.n}")
        pred = pred & not_fc_covered(CoverIndex(args.n, FC, chars.minimal_fc))
    result = enum_rec(part, empty_start(args.n), iso_upd(args.n, pred, canonical=True))
    for f in result:
        print(format_family(f))
    print(f"# {len(result)} families", file=sys.stderr)
    return EXIT_TRUE


def cmd_characterize(args: argparse.Namespace) -> int:
    from .characterizer import find_characteristic, save, with_lists

    if args.n >= EXTENDED_FROM and not args.extended:
        raise UsageError(f"n={args.n} is a long run; pass --extended to confirm")
    progress = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
    chars = find_characteristic(
        args.n,
        max_classify=args.max_classify,
        max_seconds=args.max_seconds,
        progress=progress,
        jobs=args.jobs,
    )
    if chars.complete and not args.no_lists:
        with_lists(chars)
    save(chars, args.out)
    print(
        f"n={chars.n}: {len(chars.minimal_fc)} minimal FC, {len(chars.maximal_nonfc)} maximal nonFC "
        f"({chars.classified} classified, {chars.irreducible_nonfc} irreducible nonFC, {chars.seconds:.1f}s)"
    )
    if not chars.complete:
        print("stopped early: result is incomplete", file=sys.stderr)
        return EXIT_CAP
    return EXIT_TRUE


def cmd_cover_check(args: argparse.Namespace) -> int:
    from .characterizer import coverage_report, load, region_lists, verify_semi_uniform

    chars = load(args.chars)
    if chars.n != args.n:
        raise UsageError(f"characterization is for n={chars.n}, not {args.n}")
    if not chars.lf_lists:
        raise UsageError("characterization has no semi-uniform lists (lf_ln.json)")
    semi = verify_semi_uniform(args.n, chars)
    report = coverage_report(args.n, chars)
    region = len(region_lists(args.n, chars.lf_lists))
    print(f"semi-uniform lists: {'ok' if semi else 'FAILED'}")
    print(f"total coverage: {'ok' if report.covered else 'FAILED'} ({report.lists} lists, {report.families} families, region {region})")
    for f in report.uncovered[:10]:
        print(f"  uncovered: {format_family(f)}")
    return EXIT_TRUE if semi and report.covered else EXIT_FALSE


def cmd_stats(args: argparse.Namespace) -> int:
    from .characterizer import load, stats, stats_csv

    chars = load(args.chars)
    if chars.n != args.n:
        raise UsageError(f"characterization is for n={chars.n}, not {args.n}")
    rows = stats(args.n, chars, all_families=not args.irreducible_only)
    _write(args.out, stats_csv(rows))
    fc = sum(int(r["count_fc_irred"]) for r in rows)
    non = sum(int(r["count_nonfc_irred"]) for r in rows)
    print(f"{len(rows)} lists; irreducible families: {fc} FC, {non} nonFC")
    return EXIT_TRUE


def cmd_export_lp(args: argparse.Namespace) -> int:
    fam = parse_family(args.family, args.n)
    data = _read_json(args.weights)
    if not isinstance(data, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in data):
        raise UsageError("weights file must hold a JSON array of naturals")
    w = weight_fn(data, fam.n)
    export_lp(fam, w, args.out)
    print(f"wrote {args.out}")
    return EXIT_TRUE


def cmd_expand(args: argparse.Namespace) -> int:
    cert = certificate_from_json(_read_json(args.cert))
    if not isinstance(cert, NonFCCertificate):
        raise UsageError("only nonFC certificates can be expanded")
    if not verify(cert):
        print("certificate does not verify")
        return EXIT_FALSE
    if args.d is None:
        d, big = find_sufficient_d(cert)
        ok = True
    else:
        d = args.d
        big = expand_counterexample(cert, d)
        ok = check_counterexample(cert.family, big)
    print(f"d={d}: {len(big)} sets over {big.n} elements, counterexample {'holds' if ok else 'fails'}")
    if args.out:
        _write(args.out, json.dumps({"universe": big.n, "d": d, "family": big.to_lists()}) + "\n")
    return EXIT_TRUE if ok else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fcfam", description="Frankl-complete families: decide, certify, characterize.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", help="decide FC status and print a certificate")
    s.add_argument("family", help='family text, e.g. "{{0,1,2},{0,1,3}}"')
    s.add_argument("--n", type=int, default=None, help="universe size (default: largest element + 1)")
    s.add_argument("--out", help="write the certificate here instead of stdout")
    s.add_argument("--max-iterations", type=int, default=DEFAULT_MAX_ITERATIONS)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", help="check a certificate")
    s.add_argument("cert")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="iso-base of L-partitioned families")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--partition", required=True, help="list such as [0,0,0,3]")
    s.add_argument("--irreducible", action="store_true")
    s.add_argument("--not-covered-by", metavar="DIR", help="skip families FC-covered by this characterization")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("characterize", help="find minimal FC and maximal nonFC families")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--out", required=True, metavar="DIR")
    s.add_argument("--extended", action="store_true", help=f"allow n >= {EXTENDED_FROM}")
    s.add_argument("--jobs", type=int, default=1, help="worker processes for classification")
    s.add_argument("--max-classify", type=int, default=None)
    s.add_argument("--max-seconds", type=float, default=None)
    s.add_argument("--no-lists", action="store_true", help="skip deriving the semi-uniform lists")
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_characterize)

    s = sub.add_parser("cover-check", help="check semi-uniform lists and total coverage")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--chars", required=True, metavar="DIR")
    s.set_defaults(func=cmd_cover_check)

    s = sub.add_parser("stats", help="per-list family counts as CSV")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--chars", required=True, metavar="DIR")
    s.add_argument("--out", required=True)
    s.add_argument("--irreducible-only", action="store_true", help="leave the all-family columns empty")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("export-lp", help="write the 0-1 program for a negative-share extension")
    s.add_argument("family")
    s.add_argument("--n", type=int, default=None)
    s.add_argument("--weights", required=True, help="JSON array of weights")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_export_lp)

    s = sub.add_parser("expand-counterexample", help="build the explicit counterexample of a nonFC certificate")
    s.add_argument("cert")
    s.add_argument("--d", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_expand)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
