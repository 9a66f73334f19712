"""Command-line interface.

Exit codes: 0 success, 1 mathematical rejection, 2 search exhausted,
64 usage error, 65 malformed data.  ``$PAWITNESS_THREADS`` caps the worker
threads used for sieving and primality testing.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .formula.parser import ParseError, parse
from .formula.printer import DEFAULT_EXPANSION_CAP, render
from .formula.semantics import Assignment, EvaluationError, eval_bounded, eval_schema
from .harness import NotInThetaError, demonstrate, read_tags
from .schemas import instance, parse_tag, tag_sentence
from .stats import compute_stats
from .witness import (
    DEFAULT_MAX_PROGRESSION_INDEX,
    CertificateFormatError,
    SearchExhausted,
    SearchPolicy,
    WitnessCertificate,
    find_witnesses,
    verify_certificate,
)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_EXHAUSTED = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _policy(args) -> SearchPolicy:
    return SearchPolicy(max_progression_index=args.max_m, workers=args.threads)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def cmd_witness(args) -> int:
    if args.max_m < args.n:
        raise UsageError("--max-m must be at least --n")
    try:
        cert = find_witnesses(args.n, args.k, _policy(args))
    except SearchExhausted as err:
        print(f"search exhausted: {err}", file=sys.stderr)
        return EXIT_EXHAUSTED
    text = cert.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        raw = _read_input(args.path)
        cert = WitnessCertificate.from_json(raw)
        report = verify_certificate(cert)
    except OSError as err:
        print(f"cannot read certificate: {err}", file=sys.stderr)
        return EXIT_DATA
    except CertificateFormatError as err:
        print(f"malformed certificate: {err}", file=sys.stderr)
        return EXIT_DATA
    if args.json:
        out = {
            "accepted": report.accepted,
            "regimes": {f"c{i}": r for i, r in report.regimes.items()},
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in report.checks],
        }
        print(json.dumps(out, indent=2))
    else:
        print(report.summary())
    return EXIT_OK if report.accepted else EXIT_REJECTED


def _assignment(items) -> Assignment:
    values = {}
    for item in items:
        for part in item.split(","):
            name, sep, value = part.partition("=")
            name = name.strip()
            if not sep or not name.startswith("c") or not name[1:].isdigit():
                raise UsageError(f"bad assignment {part!r}; expected cN=NUMBER")
            try:
                values[int(name[1:])] = int(value)
            except ValueError:
                raise UsageError(f"bad value in assignment {part!r}") from None
    try:
        return Assignment(values)
    except ValueError as err:
        raise UsageError(str(err)) from None


def cmd_eval(args) -> int:
    a = _assignment(args.assign)
    try:
        sentence = parse(args.formula)
        if args.schema:
            try:
                tag = parse_tag(args.schema)
            except ValueError as err:
                raise UsageError(str(err)) from None
            verdict = eval_schema(tag_sentence(sentence, tag, args.bound), a)
        else:
            verdict = eval_bounded(sentence, a, args.bound)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_DATA
    except (EvaluationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA
    print(verdict)
    return EXIT_OK


def cmd_schema(args) -> int:
    try:
        tag = parse_tag(args.tag)
    except ValueError as err:
        raise UsageError(str(err)) from None
    print(render(instance(tag).sentence, cap=args.cap))
    return EXIT_OK


def cmd_cover(args) -> int:
    text = args.tags
    try:
        if text == "-" or text.startswith("@"):
            text = _read_input(text[1:] if text.startswith("@") else "-").decode("utf-8")
        tags = read_tags(text)
    except (OSError, UnicodeDecodeError, ParseError) as err:
        print(f"malformed tag list: {err}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as err:
        raise UsageError(str(err)) from None
    try:
        demo = demonstrate(tags, _policy(args), allow_omega=args.allow_omega)
    except NotInThetaError as err:
        raise UsageError(str(err)) from None
    except ValueError as err:
        raise UsageError(str(err)) from None
    except SearchExhausted as err:
        print(f"search exhausted: {err}", file=sys.stderr)
        return EXIT_EXHAUSTED
    if args.json:
        print(json.dumps(demo.to_dict(), indent=2))
    else:
        print(f"cover: n={demo.cover.n} k={demo.cover.k}")
        for w in demo.certificate.witnesses:
            print(f"c{w.i} = {w.value}  (m={w.m}, {w.regime})")
        for tag, verdict in demo.verdicts:
            print(f"{tag}: {verdict}")
        for note in demo.assumptions:
            print(f"assumption: {note}")
    return EXIT_OK if demo.all_true else EXIT_REJECTED


def cmd_stats(args) -> int:
    if args.x < 2:
        raise UsageError("--x must be >= 2")
    try:
        report = compute_stats(args.k, args.x, workers=args.threads)
    except ValueError as err:
        raise UsageError(str(err)) from None
    print(json.dumps(report.to_dict(), indent=2) if args.json else report.table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pawitness", description="Witnesses and certificates for finite fragments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def search_flags(p):
        p.add_argument("--max-m", type=_positive, default=DEFAULT_MAX_PROGRESSION_INDEX,
                       help="largest progression index to try")
        p.add_argument("--threads", type=_positive, default=None,
                       help="worker threads (default: $PAWITNESS_THREADS or 1)")

    p = sub.add_parser("witness", help="find prime witnesses and print a certificate")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--out", help="write the certificate here instead of stdout")
    search_flags(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="check a certificate ('-' reads stdin)")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a sentence in the standard model")
    p.add_argument("formula")
    p.add_argument("--assign", action="append", default=[], metavar="cN=NUM")
    p.add_argument("--bound", type=_natural, default=10**4)
    p.add_argument("--schema", metavar="TAG", help="exact mode, e.g. gamma:1:3")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("schema", help="print a schema instance, e.g. omega:1:3")
    p.add_argument("tag")
    p.add_argument("--cap", type=_natural, default=DEFAULT_EXPANSION_CAP,
                   help="largest numeral printed as nested S(...)")
    p.set_defaults(func=cmd_schema)

    p = sub.add_parser("cover", help="cover a tag list by a fragment and exhibit a model")
    p.add_argument("tags", help="JSON array, '@file', or '-' for stdin")
    p.add_argument("--allow-omega", action="store_true")
    p.add_argument("--json", action="store_true")
    search_flags(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("stats", help="prime counts in the omega and gamma classes")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--x", type=_natural, required=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--threads", type=_positive, default=None)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as err:
        print(f"{parser.prog} {args.command}: error: {err}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())
