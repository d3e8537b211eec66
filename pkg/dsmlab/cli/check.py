"""check: 히스토리 파일의 일관성 검사"""
import argparse
import logging

from dsmlab.checker.completion import complete_history
from dsmlab.checker.compositional import check_linearizable_realtime, check_sc_compositional
from dsmlab.checker.oracle import check_sc_bruteforce
from dsmlab.checker.verdict import Outcome, Verdict
from dsmlab.cli.common import banner, mark
from dsmlab.core.config import get_settings
from dsmlab.core.exceptions import EXIT_OK, EXIT_REJECTED, EXIT_UNDECIDED, OracleCapExceeded
from dsmlab.schemas.verdict import VerdictRecord
from dsmlab.services.history_io import read_history

logger = logging.getLogger(__name__)

MODES = ("compositional", "bruteforce", "both", "linearizable")
EXIT_CODES = {
    Outcome.ACCEPTED: EXIT_OK,
    Outcome.REJECTED: EXIT_REJECTED,
    Outcome.UNDECIDED: EXIT_UNDECIDED,
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="check a history file")
    parser.add_argument("history", help="history file (.jsonl)")
    parser.add_argument("--mode", choices=MODES, default="compositional")
    parser.add_argument("--json", action="store_true", help="print one JSON verdict record per line")
    parser.add_argument("--max-states", type=int, default=None, help="search cap of the linearizability check")
    parser.set_defaults(func=cmd_check)


def _describe(verdict: Verdict) -> str:
    if verdict.accepted:
        return f"accepted ({verdict.method})"
    if verdict.violation is not None:
        v = verdict.violation
        ops = ", ".join(str(o) for o in v.conflicting_ops)
        where = f" on {v.register}" if v.register else ""
        return f"rejected{where}: {v.condition} [ops {ops}]"
    return f"undecided after {verdict.explored_states} states"


def _print_verdict(label: str, verdict: Verdict, as_json: bool) -> None:
    if as_json:
        for part in verdict.parts:
            print(VerdictRecord.from_verdict(part, "register").to_json())
        print(VerdictRecord.from_verdict(verdict, "overall").to_json())
        return
    for part in verdict.parts:
        print(f"  {part.register}: {mark(part.outcome)} {_describe(part)}")
    print(f"{label}: {mark(verdict.outcome)} {_describe(verdict)}")


def cmd_check(args: argparse.Namespace) -> int:
    """
    히스토리 검사

    - compositional: 레지스터별 H^lt 선형성 합성 (lt 필요)
    - bruteforce: 전수 인터리빙 오라클 (작은 히스토리)
    - both: 두 검사 모두, 오라클 판정을 최종 결과로 사용하고 일치 여부 보고
      (오라클 상한을 넘으면 합성 검사 판정을 사용)
    - linearizable: 실시간 선형성

    Returns:
        int: accepted 0, rejected 1, undecided 3
    """
    history = read_history(args.history)
    if not history.is_complete():
        logger.info(f"Completing {len(history.pending())} pending operations")
        history = complete_history(history)

    if not args.json:
        banner(f"check {args.history} ({args.mode}, {len(history.operations())} ops)")

    if args.mode == "linearizable":
        verdict = check_linearizable_realtime(history, max_states=args.max_states)
        _print_verdict("LIN", verdict, args.json)
        return EXIT_CODES[verdict.outcome]

    if args.mode == "bruteforce":
        verdict = check_sc_bruteforce(history)
        _print_verdict("SC (oracle)", verdict, args.json)
        return EXIT_CODES[verdict.outcome]

    compositional = check_sc_compositional(history, max_states=args.max_states)
    if compositional.undecided:
        logger.warning(f"Compositional check undecided after {compositional.explored_states} states")
    if args.mode == "compositional":
        _print_verdict("SC", compositional, args.json)
        return EXIT_CODES[compositional.outcome]

    _print_verdict("SC (compositional)", compositional, args.json)
    try:
        oracle = check_sc_bruteforce(history)
    except OracleCapExceeded as e:
        logger.warning(f"Oracle skipped: {e}")
        if not args.json:
            print(f"SC (oracle): refused (cap {get_settings().ORACLE_MAX_OPS})")
            print("oracle agreement: n/a")
        return EXIT_CODES[compositional.outcome]

    _print_verdict("SC (oracle)", oracle, args.json)
    if compositional.accepted and not oracle.accepted:
        logger.error("Compositional check accepted a history the oracle rejects")
    if not args.json:
        agree = compositional.outcome is oracle.outcome
        print(f"oracle agreement: {'yes' if agree else 'no'}")
    return EXIT_CODES[oracle.outcome]
