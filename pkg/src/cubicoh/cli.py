"""Command-line interface: corpus loading, suites, reports, generation.

Exit codes: 0 on success, 1 when a suite reports failures, 2 on corpus
or argument validation errors.  JSON reports contain no wall-clock
data, so identical inputs yield byte-identical report files; timing is
printed only in the human summary.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .cohomology import relative_cohomology
from .corpus import (
    CorpusError,
    builtin_corpus,
    generate_corpus,
    load_corpus,
    save_corpus,
)
from .suites import SUITE_NAMES, run_suite


def _parse_window(text):
    try:
        lo, hi = text.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like LO:HI")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cubicoh",
        description="verification suites for cubical-pair cohomology")
    sub = parser.add_subparsers(dest="command", required=True)

    cohom = sub.add_parser("cohomology",
                           help="print invariant factors of H^*(pair)")
    cohom.add_argument("--corpus", help="corpus JSON path (default builtin)")
    cohom.add_argument("--pair", required=True, help="pair name")
    cohom.add_argument("--window", type=_parse_window, default=None,
                       help="degree window LO:HI")

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--corpus", help="corpus JSON path (default builtin)")
    verify.add_argument("--suite", default="all", choices=SUITE_NAMES)
    verify.add_argument("--window", type=_parse_window, default=None)
    verify.add_argument("--modulus", type=int, default=2)
    verify.add_argument("--json", dest="json_path",
                        help="write the JSON report here")

    gen = sub.add_parser("generate", help="write a pseudo-random corpus")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--max-cubes", type=int, default=30)
    gen.add_argument("--complexes", type=int, default=12)
    gen.add_argument("--json", dest="json_path", required=True,
                     help="output corpus path")
    return parser


def _load(args):
    if getattr(args, "corpus", None):
        return load_corpus(args.corpus)
    return builtin_corpus()


def cmd_cohomology(args):
    corpus = _load(args)
    if args.pair not in corpus.pairs:
        print("unknown pair %r" % args.pair, file=sys.stderr)
        return 2
    pair = corpus.pairs[args.pair]
    window = args.window if args.window is not None \
        else range(0, max(pair.total.dim, 0) + 1)
    for n in window:
        value = relative_cohomology(pair, n)
        print("H^%d = %s" % (n, value.describe()))
    return 0


def cmd_verify(args):
    corpus = _load(args)
    started = time.monotonic()
    report = run_suite(args.suite, corpus, window=args.window,
                       modulus=args.modulus)
    elapsed = time.monotonic() - started
    print(report.summary())
    for item in report.failures:
        print("FAIL %s %s" % (item.key, json.dumps(item.detail,
                                                   sort_keys=True)))
    print("elapsed: %.2fs" % elapsed)
    if args.json_path:
        payload = json.dumps(report.to_json(), sort_keys=True,
                             separators=(",", ":")) + "\n"
        Path(args.json_path).write_text(payload, encoding="utf-8")
    return 0 if report.ok else 1


def cmd_generate(args):
    corpus = generate_corpus(args.seed, max_cubes=args.max_cubes,
                             complexes=args.complexes)
    save_corpus(corpus, args.json_path)
    print("wrote %s (%d complexes)" % (args.json_path,
                                       len(corpus.complexes)))
    return 0


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "cohomology":
            return cmd_cohomology(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "generate":
            return cmd_generate(args)
    except CorpusError as exc:
        print("corpus error: %s" % exc, file=sys.stderr)
        return 2
    parser.error("unknown command")


if __name__ == "__main__":
    sys.exit(main())
