"""stats: 히스토리의 연산당 라운드 통계"""
import argparse
import logging
import os

from dsmlab.cli.common import banner
from dsmlab.core.exceptions import EXIT_OK
from dsmlab.services.history_io import meta_path, read_history, read_message_log, read_meta, sidecar_path
from dsmlab.services.report_exporter import ReportExporter
from dsmlab.services.stats import compute_stats

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("stats", help="rounds-per-operation statistics of a history")
    parser.add_argument("history", help="history file (.jsonl); the sidecar is looked up next to it")
    parser.add_argument("--xlsx", default=None, help="export the statistics to this .xlsx file (bare names go under EXPORT_DIR)")
    parser.set_defaults(func=cmd_stats)


def cmd_stats(args: argparse.Namespace) -> int:
    """
    라운드 히스토그램과 프로토콜 비교 행 출력

    사이드카가 없으면 경고 후 연산 수만 출력한다.
    """
    history = read_history(args.history)

    sidecar = sidecar_path(args.history)
    messages = read_message_log(sidecar) if os.path.exists(sidecar) else None
    if messages is None:
        logger.warning(f"Message log sidecar {sidecar} not found")
    meta_file = meta_path(args.history)
    meta = read_meta(meta_file) if os.path.exists(meta_file) else None

    stats = compute_stats(history, messages, meta)

    banner(f"stats {args.history}")
    if not stats.invoked:
        print("(empty history)")
    for kind in sorted(stats.invoked):
        print(f"{kind}: completed {stats.completed.get(kind, 0)}/{stats.invoked[kind]}")
        if stats.histogram is not None:
            for rounds, count in sorted(stats.histogram.get(kind, {}).items()):
                print(f"  {rounds} rounds: {count}")

    if stats.histogram is not None:
        row = stats.table_row()
        print(" | ".join(row.keys()))
        print(" | ".join(row.values()))
    else:
        print("round statistics unavailable (no message log)")

    if args.xlsx:
        ReportExporter().export_stats(stats, args.xlsx)
    return EXIT_OK
