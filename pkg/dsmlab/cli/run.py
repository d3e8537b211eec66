"""run: 설정 파일 하나로 시뮬레이션 실행 후 히스토리 저장"""
import argparse
import logging

from dsmlab.cli.common import banner
from dsmlab.core.exceptions import EXIT_OK, SimulationHorizonExceeded
from dsmlab.core.history import OpKind
from dsmlab.services.config_loader import load_run_config
from dsmlab.services.history_io import save_trace
from dsmlab.services.stats import summarize_rounds
from dsmlab.simnet import RunOutcome, run_simulation

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("run", help="run one seeded simulation and write its history")
    parser.add_argument("config", help="run config file (key = value)")
    parser.add_argument("--seed", type=int, default=None, help="override the config seed")
    parser.add_argument("--out", required=True, help="history file to write (.jsonl)")
    parser.set_defaults(func=cmd_run)


def cmd_run(args: argparse.Namespace) -> int:
    """
    시뮬레이션 실행

    히스토리, 메시지 로그 사이드카, 메타 파일을 쓰고 연산 종류별 완료 수와 라운드 수를 출력한다.

    Returns:
        int: 정지 상태면 0

    Raises:
        SimulationHorizonExceeded: 정지 상태에 도달하지 못한 경우 (파일은 저장됨)
    """
    cfg = load_run_config(args.config, seed=args.seed)
    trace = run_simulation(cfg)
    save_trace(trace, args.out)

    banner(f"{cfg.protocol.value} run: n={cfg.n} seed={cfg.seed} mutant={cfg.mutant.value}")
    print(f"outcome: {trace.outcome.value} (final tick {trace.final_tick})")
    if trace.crashed:
        print(f"crashed: {', '.join(f'p{pid}' for pid in sorted(trace.crashed))}")

    ops = trace.history.operations()
    by_kind = trace.rounds_by_kind()
    for kind in (OpKind.WRITE, OpKind.READ):
        invoked = sum(1 for op in ops if op.kind is kind)
        completed = len(by_kind[kind])
        print(f"  {kind.value}: completed {completed}/{invoked}, rounds = {summarize_rounds(by_kind[kind])}")
    print(f"messages: {len(trace.message_log)}")
    print(f"history: {args.out}")

    if trace.outcome is not RunOutcome.QUIESCENT:
        raise SimulationHorizonExceeded(
            f"run seed={cfg.seed} ended {trace.outcome.value} at tick {trace.final_tick}"
        )
    logger.info(f"Run seed={cfg.seed} finished: {len(ops)} operations")
    return EXIT_OK
