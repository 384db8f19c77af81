"""Command-line front end: build, verify, useq, count.

Exit codes: 0 on success (and a passing verdict for build/verify), 1 on a
failing verdict, 2 on usage or IO errors.  All output is deterministic for
the minimal policy.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .certfile import build_config_from_doc, parse_certificate, render_certificate
from .construct import InvariantViolation, build, verify
from .counting import (FiniteSet, count_ordered, count_restricted,
                       count_restricted_ordered, count_unordered, histogram)
from .streams import RealizationStream, growth_bound
from .targets import ConfigError, parse_config


def parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="addbasis",
        description="Construct and verify sparse additive bases whose "
                    "h-fold representation counts match a target function.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="run the construction and write a certificate")
    p_build.add_argument("--config", required=True, help="build config file")
    p_build.add_argument("--out", required=True, help="certificate output path")

    p_verify = sub.add_parser("verify", help="replay all checks from a certificate file")
    p_verify.add_argument("certificate", help="certificate file")

    p_useq = sub.add_parser("useq", help="print the realizing stream as TSV")
    p_useq.add_argument("--config", required=True, help="target function config file")
    p_useq.add_argument("--count", required=True, type=int, metavar="K",
                        help="number of stream terms to print")

    p_count = sub.add_parser("count", help="representation counts of a finite set")
    p_count.add_argument("--set", required=True, dest="elements",
                         help="comma-separated integers")
    p_count.add_argument("--order", required=True, type=int, help="summand count h")
    pick = p_count.add_mutually_exclusive_group(required=True)
    pick.add_argument("--n", type=int, help="count representations of one sum")
    pick.add_argument("--histogram", action="store_true",
                      help="print every reachable sum as TSV")

    return parser.parse_args(argv)


def run(args: argparse.Namespace) -> int:
    try:
        if args.command == "build":
            return _run_build(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "useq":
            return _run_useq(args)
        return _run_count(args)
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    return run(parse_args(argv))


def _run_build(args: argparse.Namespace) -> int:
    doc = parse_config(Path(args.config).read_text(encoding="ascii"))
    config = build_config_from_doc(doc)
    final_set, cert = build(config)
    Path(args.out).write_text(render_certificate(cert), encoding="ascii")
    for check in cert.failed_checks():
        print(f"check\t{check.name}\tfail\t{check.witness or '-'}")
    print("set\t" + " ".join(str(a) for a in final_set))
    print(f"verdict\t{'pass' if cert.verdict else 'fail'}")
    return 0 if cert.verdict else 1


def _run_verify(args: argparse.Namespace) -> int:
    text = Path(args.certificate).read_text(encoding="ascii")
    config, history, final_set = parse_certificate(text)
    cert = verify(final_set, history, config)
    for check in cert.checks:
        status = "pass" if check.passed else "fail"
        print(f"check\t{check.name}\t{status}\t{check.witness or '-'}")
    print(f"verdict\t{'pass' if cert.verdict else 'fail'}")
    return 0 if cert.verdict else 1


def _run_useq(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise ConfigError("--count must be >= 1")
    doc = parse_config(Path(args.config).read_text(encoding="ascii"))
    zeros = doc.target.zero_count()
    stream = RealizationStream(doc.target)
    for k in range(1, args.count + 1):
        term = stream.take()
        print(f"{k}\t{term.value}\t{growth_bound(k, zeros)}")
    return 0


def _run_count(args: argparse.Namespace) -> int:
    if args.order < 1:
        raise ConfigError("--order must be >= 1")
    try:
        elements = [int(tok.strip()) for tok in args.elements.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--set takes comma-separated integers, got {args.elements!r}") from None
    if not elements:
        raise ConfigError("--set needs at least one element")
    A = FiniteSet.of(elements)
    if args.histogram:
        for n in histogram(A, args.order).support():
            print(_count_row(A, args.order, n))
    else:
        print(_count_row(A, args.order, args.n))
    return 0


def _count_row(A: FiniteSet, h: int, n: int) -> str:
    return "\t".join(str(x) for x in (
        n,
        count_unordered(A, h, n),
        count_ordered(A, h, n),
        count_restricted(A, h, n),
        count_restricted_ordered(A, h, n),
    ))
