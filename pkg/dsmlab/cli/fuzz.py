"""fuzz: 시드 기반 퍼징 캠페인"""
import argparse
import logging

from dsmlab.cli.common import banner
from dsmlab.core.config import get_settings
from dsmlab.core.exceptions import EXIT_OK, EXIT_REJECTED, ConfigError
from dsmlab.protocol.state import Mutant, Protocol
from dsmlab.services.campaign import run_campaign
from dsmlab.services.report_exporter import ReportExporter

logger = logging.getLogger(__name__)

MUTANTS = ("none", "small-quorum", "no-writeback")


def register(subparsers) -> None:
    parser = subparsers.add_parser("fuzz", help="run a seeded fuzzing campaign")
    parser.add_argument("--runs", type=int, default=100)
    parser.add_argument("--mutant", choices=MUTANTS, default="none")
    parser.add_argument("--seed0", type=int, default=0)
    parser.add_argument("--n", type=int, default=None, help="fix the process count")
    parser.add_argument("--protocol", choices=[p.value for p in Protocol], default=Protocol.SC_ABD.value)
    parser.add_argument("--workers", type=int, default=None, help="worker processes (default FUZZ_WORKERS)")
    parser.add_argument("--xlsx", default=None, help="export the per-run table to this .xlsx file (bare names go under EXPORT_DIR)")
    parser.set_defaults(func=cmd_fuzz)


def cmd_fuzz(args: argparse.Namespace) -> int:
    """
    퍼징 캠페인 실행 후 보고

    변이 없는 캠페인은 위반이 하나라도 있으면 1, 변이 캠페인은 검출 여부와 무관하게 0.

    Returns:
        int: 종료 코드
    """
    if args.runs < 0:
        raise ConfigError("--runs must be >= 0")
    mutant = Mutant(args.mutant.replace("-", "_"))
    protocol = Protocol(args.protocol)
    workers = args.workers if args.workers is not None else get_settings().FUZZ_WORKERS

    report = run_campaign(args.runs, seed0=args.seed0, protocol=protocol, mutant=mutant,
                          n=args.n, workers=workers)

    banner(f"fuzz {protocol.value} mutant={mutant.value} seeds {args.seed0}..{args.seed0 + args.runs - 1}")
    print(f"runs: {report.runs}")
    print(f"accepted: {report.accepted}/{report.runs} ({report.acceptance_rate:.2%})")
    for verdict in ("rejected", "undecided", "error"):
        if report.count(verdict):
            print(f"{verdict}: {report.count(verdict)}")
    for name, failures in sorted(report.audit_failures().items()):
        status = "✅" if failures == 0 else "❌"
        print(f"  {status} audit {name}: {failures} failures")

    first = report.first_violation
    if first is None:
        print("no violation found")
    else:
        failed = [name for name, ok in first.audits.items() if not ok]
        print(f"first violating seed: {first.seed} (verdict {first.verdict}"
              f"{', audits ' + ', '.join(failed) if failed else ''})")

    if args.xlsx:
        ReportExporter().export_campaign(report, args.xlsx)

    if mutant is Mutant.NONE and first is not None:
        return EXIT_REJECTED
    return EXIT_OK
