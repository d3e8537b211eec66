"""DSM Lab command-line entry point

사용법:
    python -m dsmlab.main run configs/example_run.conf --out data/run.jsonl
    python -m dsmlab.main check data/run.jsonl --mode both
    python -m dsmlab.main fuzz --runs 1000 --mutant small-quorum
    python -m dsmlab.main stats data/run.jsonl
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# 환경변수 로드 (LOG_LEVEL, LIN_MAX_STATES 등)
env_path = Path(__file__).parent.parent / "config" / ".env"
load_dotenv(env_path)

from dsmlab.cli import COMMANDS
from dsmlab.core.config import get_settings
from dsmlab.core.exceptions import DsmLabError
from dsmlab.core.logging import setup_logging

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog="dsmlab",
        description="SC-ABD shared memory laboratory: simulate, check, fuzz, measure",
    )
    parser.add_argument("--version", action="version", version=f"{settings.APP_NAME} {settings.APP_VERSION}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    """
    서브커맨드 실행

    Args:
        argv: 인자 목록 (None이면 sys.argv)

    Returns:
        int: 종료 코드 (dsmlab.cli 참고)
    """
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(settings)
    logger.debug(f"{settings.APP_NAME} {settings.APP_VERSION}: {args.command}")

    try:
        return args.func(args)
    except DsmLabError as e:
        logger.error(f"{args.command} failed: {type(e).__name__}: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
