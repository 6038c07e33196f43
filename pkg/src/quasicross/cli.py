"""Command-line front end.

Subcommands: classify (dimension table for a shape), check (per-criterion
outcomes for one dimension), search (splitter-set search with certificate
storage), verify (certificate store verification), summarize (firing
statistics).  Exit codes: 0 success, 1 usage error, 2 verification failure
or contradiction.  Reports go to stdout and are byte-identical across
identical invocations; diagnostics and timings go to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from .classify import (
    ContradictionError,
    Registry,
    classify_range,
    default_certificates_path,
    default_registry,
    load_certificates,
    load_registry,
    report_csv,
    report_json,
    report_text,
    store_certificate,
    summarize,
    witness_text,
)
from .criteria import CRITERION_ORDER
from .search import SearchStatus, find_splitting
from .splitting import Splitting, interval_multipliers


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract here is 1.
    def error(self, message):
        raise _UsageError(message)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _build_parser() -> _Parser:
    parser = _Parser(prog="quasicross", description=__doc__, add_help=True)
    sub = parser.add_subparsers(dest="command", metavar="command")

    def add_shape(p):
        p.add_argument("--kplus", type=_positive_int, required=True, help="forward arm length")
        p.add_argument("--kminus", type=_positive_int, required=True, help="backward arm length")

    def add_registry(p):
        p.add_argument(
            "--registry",
            help="registry JSON file of known tiling dimensions "
            "(default: the packaged registry for the shape, when one exists)",
        )
        p.add_argument(
            "--no-registry",
            action="store_true",
            help="run with an empty registry even when a packaged one exists",
        )

    p = sub.add_parser("classify", help="classify every dimension up to --max-n")
    add_shape(p)
    p.add_argument("--max-n", type=_positive_int, required=True, help="largest dimension to classify")
    add_registry(p)
    p.add_argument("--certificates", help="JSON-lines certificate store to use as tiling evidence")
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("check", help="per-criterion outcomes for one dimension")
    add_shape(p)
    p.add_argument("--n", type=_positive_int, required=True, help="dimension to check")
    add_registry(p)

    p = sub.add_parser("search", help="search for a splitter set over Z_q")
    add_shape(p)
    p.add_argument("--q", type=_positive_int, required=True, help="group order")
    p.add_argument("--node-budget", type=_positive_int, default=1_000_000)
    p.add_argument("--time-budget", type=float, default=None, help="advisory wall-clock cap, seconds")
    p.add_argument("--store", default="certificates.jsonl", help="certificate store to append to")
    p.add_argument("--no-store", action="store_true", help="do not persist a found splitting")

    p = sub.add_parser("verify", help="verify a certificate store line by line")
    p.add_argument(
        "--certificates",
        default=None,
        help="JSON-lines store to verify (default: the packaged store)",
    )

    p = sub.add_parser("summarize", help="classification summary and firing statistics")
    add_shape(p)
    p.add_argument("--max-n", type=_positive_int, required=True)
    add_registry(p)
    p.add_argument("--certificates", help="JSON-lines certificate store to use as tiling evidence")

    return parser


def _thread_cap() -> int:
    raw = os.environ.get("QX_THREADS")
    if raw is None:
        return 1
    try:
        cap = int(raw)
    except ValueError:
        raise _UsageError(f"QX_THREADS must be a positive integer, got {raw!r}") from None
    if cap < 1:
        raise _UsageError(f"QX_THREADS must be a positive integer, got {raw!r}")
    # Evaluation is sequential; any cap >= 1 is honored as-is and results
    # never depend on it.
    return cap


def _validate_shape(args) -> None:
    if args.kplus < args.kminus:
        raise _UsageError(
            f"arms must satisfy 1 <= kminus <= kplus, got ({args.kplus}, {args.kminus})"
        )


def _resolve_registry(args) -> Registry | None:
    if getattr(args, "no_registry", False):
        return None
    if getattr(args, "registry", None):
        return load_registry(args.registry)
    return default_registry(args.kplus, args.kminus)


def _resolve_certificates(args):
    path = getattr(args, "certificates", None)
    return load_certificates(path) if path else ()


def _cmd_classify(args) -> int:
    _validate_shape(args)
    _thread_cap()
    run = classify_range(
        args.kplus, args.kminus, args.max_n,
        registry=_resolve_registry(args),
        certificates=_resolve_certificates(args),
    )
    render = {"text": report_text, "csv": report_csv, "json": report_json}[args.format]
    sys.stdout.write(render(run))
    return 0


def _cmd_check(args) -> int:
    _validate_shape(args)
    registry = _resolve_registry(args)
    run = classify_range(args.kplus, args.kminus, args.n, registry=registry)
    verdict = run.verdicts[args.n - 1]
    print(f"shape ({args.kplus},{args.kminus}) n={args.n} q={verdict.q}")
    if verdict.source is not None:
        print(f"verdict: {verdict.status.value} ({verdict.source.value})")
    else:
        print(f"verdict: {verdict.status.value}")
    print("criteria:")
    width = max(len(cid) for cid in CRITERION_ORDER)
    for out in run.outcomes[args.n]:
        wtxt = witness_text(out.witness)
        line = f"  {out.criterion_id:<{width}}  {out.status.value:<12}  {wtxt}".rstrip()
        print(line)
    return 0


def _cmd_search(args) -> int:
    _validate_shape(args)
    if args.q <= args.kplus + args.kminus:
        raise _UsageError(f"q must exceed kplus + kminus, got q={args.q}")
    multipliers = interval_multipliers(args.kplus, args.kminus, args.q)
    outcome = find_splitting(
        args.q,
        multipliers,
        node_budget=args.node_budget,
        time_budget_s=args.time_budget,
    )
    print(f"status: {outcome.status.value}")
    print(f"q: {args.q}")
    print(f"multipliers: -{args.kminus}..{args.kplus}")
    if outcome.splitters is not None:
        print("splitters: " + " ".join(map(str, outcome.splitters)))
    if outcome.diagnostic:
        print(f"note: {outcome.diagnostic}")
    print(f"nodes: {outcome.nodes}")
    print(f"elapsed: {outcome.elapsed_s:.3f}s", file=sys.stderr)
    if outcome.status is SearchStatus.FOUND and not args.no_store:
        cert = Splitting(args.q, args.kplus, args.kminus, outcome.splitters)
        if store_certificate(cert, args.store):
            print(f"stored certificate in {args.store}", file=sys.stderr)
        else:
            print(f"certificate already present in {args.store}", file=sys.stderr)
    return 0


def _cmd_verify(args) -> int:
    path = args.certificates if args.certificates else default_certificates_path()
    certs = load_certificates(path)  # raises on the first bad certificate
    for i, cert in enumerate(certs, start=1):
        print(f"certificate {i}: ok q={cert.q} arms=({cert.k_plus},{cert.k_minus}) n={cert.dimension}")
    print(f"{len(certs)} certificate(s) verified")
    return 0


def _cmd_summarize(args) -> int:
    _validate_shape(args)
    run = classify_range(
        args.kplus, args.kminus, args.max_n,
        registry=_resolve_registry(args),
        certificates=_resolve_certificates(args),
    )
    sys.stdout.write(summarize(run).to_text())
    return 0


_COMMANDS = {
    "classify": _cmd_classify,
    "check": _cmd_check,
    "search": _cmd_search,
    "verify": _cmd_verify,
    "summarize": _cmd_summarize,
}


def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and dispatch; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise _UsageError("a command is required")
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 1
    except ContradictionError as exc:
        print(f"contradiction: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # Bad certificate stores and malformed inputs are verification
        # failures; everything else ValueError-ish is treated the same way.
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
