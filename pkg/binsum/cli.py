# binsum/cli.py
# ===========================================================================
# binsum command line
#
#   binsum compute --n N --r R [--algo direct|rec-r|rec-mixed]
#   binsum verify  --n N --r R [--format json|csv|plain] [--split]
#   binsum sweep   --n-max N --r-max R [--checks a,b,...|all] [--workers W]
#                  [--failure-cap C] [--format ...] [--out PATH]
#   binsum table   --n-max N --r-max R [--format ...]
#
#   Every subcommand also takes --debug and --log-file PATH.
#
# EXIT CODES
#   0  success, every check passed
#   1  usage or I/O error
#   2  a mathematical check failed
#
# Reports go to stdout (or --out); diagnostics go to stderr (or --log-file).
# ===========================================================================

from __future__ import annotations

import argparse
import sys
from enum import StrEnum
from pathlib import Path
from typing import Callable, Dict, List, NoReturn, Optional, Sequence

from binsum.libs.binomial_sums import f_direct, f_rec_mixed, f_rec_r
from binsum.libs.log import DEBUG_LOGGING, RunLog
from binsum.libs.report import OutputFormat, encode_record, encode_records, encode_sweep
from binsum.libs.sweep import DEFAULT_WORKERS, FAILURE_CAP, sweep
from binsum.libs.types import CheckKind, TheoremRecord
from binsum.libs.verifier import verify_split, verify_theorem

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 2


class Algorithm(StrEnum):
    DIRECT = "direct"
    REC_R = "rec-r"
    REC_MIXED = "rec-mixed"


_ALGORITHMS: Dict[Algorithm, Callable[[int, int], int]] = {
    Algorithm.DIRECT: f_direct,
    Algorithm.REC_R: lambda n, r: f_rec_r(n, r),
    Algorithm.REC_MIXED: lambda n, r: f_rec_mixed(n, r),
}


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit 1, leaving 2 for failed checks."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nat(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return value


def _positive(text: str) -> int:
    value = _nat(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _checks(text: str) -> tuple[CheckKind, ...]:
    try:
        return CheckKind.parse_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.PLAIN,
        help="output format (default: plain)",
    )


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--debug", action="store_true", help="emit debug diagnostics")
    common.add_argument("--log-file", type=Path, default=None, help="write diagnostics to a file instead of stderr")

    parser = _Parser(
        prog="binsum",
        description="Exact evaluation of sum_k C(2n,n-k) k^(2r) and verification of its 2-adic order bound.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="print F(n, r)")
    p.add_argument("--n", type=_nat, required=True)
    p.add_argument("--r", type=_nat, required=True)
    p.add_argument("--algo", type=Algorithm, choices=list(Algorithm), default=Algorithm.DIRECT)
    p.set_defaults(handler=cmd_compute)

    p = sub.add_parser("verify", parents=[common], help="check the bound at one (n, r)")
    p.add_argument("--n", type=_nat, required=True)
    p.add_argument("--r", type=_nat, required=True)
    p.add_argument("--split", action="store_true", help="also show both split bounds (json/plain)")
    _add_format(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="run checks over [0,n_max] x [0,r_max]")
    p.add_argument("--n-max", type=_nat, required=True)
    p.add_argument("--r-max", type=_nat, required=True)
    p.add_argument("--checks", type=_checks, default=(CheckKind.THEOREM,),
                   help=f"comma-separated: {','.join(k.value for k in CheckKind)} or all")
    p.add_argument("--workers", type=_positive, default=DEFAULT_WORKERS)
    p.add_argument("--failure-cap", type=_positive, default=FAILURE_CAP)
    p.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    _add_format(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("table", parents=[common], help="nu2 and bound for every (n, r) in the rectangle")
    p.add_argument("--n-max", type=_nat, required=True)
    p.add_argument("--r-max", type=_nat, required=True)
    _add_format(p)
    p.set_defaults(handler=cmd_table)

    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_compute(args: argparse.Namespace, log: RunLog) -> int:
    value = _ALGORITHMS[args.algo](args.n, args.r)
    log.dbg(f"F({args.n}, {args.r}) via {args.algo.value}")
    sys.stdout.write(f"{value}\n")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, log: RunLog) -> int:
    rec = verify_theorem(args.n, args.r)
    split = verify_split(args.n, args.r) if args.split else None
    if split is not None and args.format is OutputFormat.CSV:
        log.log("--split ignored: split bounds are not part of the csv schema")
    sys.stdout.write(encode_record(rec, args.format, split))

    if not rec.passed:
        log.log(f"bound fails at (n={rec.n}, r={rec.r}): nu2={rec.nu2} < {rec.bound}")
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, log: RunLog) -> int:
    sink = None
    if args.out is not None:
        try:
            sink = args.out.open("w", encoding="utf-8")
        except OSError as exc:
            log.log(f"cannot write report to {args.out}: {exc}")
            return EXIT_USAGE

    try:
        report = sweep(
            args.n_max,
            args.r_max,
            args.checks,
            workers=args.workers,
            failure_cap=args.failure_cap,
            log=log.child("sweep"),
        )
        text = encode_sweep(report, args.format)
        if sink is not None:
            sink.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        log.log(f"cannot write report to {args.out}: {exc}")
        return EXIT_USAGE
    finally:
        if sink is not None:
            sink.close()

    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_table(args: argparse.Namespace, log: RunLog) -> int:
    records: List[TheoremRecord] = [
        verify_theorem(n, r)
        for n in range(args.n_max + 1)
        for r in range(args.r_max + 1)
    ]
    sys.stdout.write(encode_records(records, args.format))

    failed = [rec for rec in records if not rec.passed]
    for rec in failed:
        log.log(f"bound fails at (n={rec.n}, r={rec.r}): nu2={rec.nu2} < {rec.bound}")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # --help exits 0; every parse error exits EXIT_USAGE
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        log = RunLog(
            prefix=args.command,
            terminal_logging=args.log_file is None,
            debug_logging=args.debug or DEBUG_LOGGING,
            log_path=args.log_file,
        )
    except OSError as exc:
        print(f"binsum: cannot open log file {args.log_file}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args, log)
    except ValueError as exc:
        log.log(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
