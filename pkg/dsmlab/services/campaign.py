"""
퍼징 캠페인: 시드별 시뮬레이션 + 검사 + 감사

시드는 seed0 + 실행 번호. 같은 시드면 같은 결과가 나오므로 보고서의 시드로 재현할 수 있다.
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from dsmlab.core.clock import max_faulty
from dsmlab.core.exceptions import DsmLabError
from dsmlab.protocol.state import Mutant, Protocol
from dsmlab.simnet import run_simulation
from dsmlab.simnet.config import CrashSpec, SimConfig, UniformDelay, WorkloadConfig
from dsmlab.simnet.schedules import partition_schedule, random_schedule
from dsmlab.checker.audit import (
    audit_logical_clocks, audit_proposition1, audit_replica_monotonicity,
    audit_round_counts, audit_termination, audit_write_timestamps_unique,
)
from dsmlab.checker.completion import complete_history
from dsmlab.checker.compositional import check_linearizable_realtime, check_sc_compositional

logger = logging.getLogger(__name__)

UNMUTATED_SIZES = (3, 5, 7)
SMALL_QUORUM_SIZES = (3, 4, 5)
NO_WRITEBACK_SIZES = (3, 5)


@dataclass(frozen=True)
class RunResult:
    """실행 하나의 결과"""
    seed: int
    n: int
    operations: int
    verdict: str                  # accepted / rejected / undecided / error
    audits: dict[str, bool]
    error: Optional[str] = None

    @property
    def violated(self) -> bool:
        return self.verdict != "accepted" or not all(self.audits.values())


@dataclass
class CampaignReport:
    """캠페인 집계"""
    protocol: Protocol
    mutant: Mutant
    seed0: int
    results: list[RunResult] = field(default_factory=list)

    @property
    def runs(self) -> int:
        return len(self.results)

    @property
    def accepted(self) -> int:
        return sum(1 for r in self.results if r.verdict == "accepted")

    def count(self, verdict: str) -> int:
        return sum(1 for r in self.results if r.verdict == verdict)

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.runs if self.runs else 1.0

    def audit_failures(self) -> dict[str, int]:
        failures: dict[str, int] = {}
        for r in self.results:
            for name, ok in r.audits.items():
                failures.setdefault(name, 0)
                if not ok:
                    failures[name] += 1
        return failures

    @property
    def first_violation(self) -> Optional[RunResult]:
        return next((r for r in self.results if r.violated), None)


def build_fuzz_config(seed: int, protocol: Protocol = Protocol.SC_ABD,
                      mutant: Mutant = Mutant.NONE, n: Optional[int] = None) -> SimConfig:
    """
    시드 하나로 실행 설정 생성

    - 변이 없음: n ∈ {3,5,7}, f 이하 무작위 크래시, 균등 지연
    - small_quorum: 두 그룹 분할 스케줄
    - no_writeback: 메시지 종류/링크별 무작위 빠름/느림 스케줄

    Args:
        seed: 설정과 시뮬레이션 모두의 시드
        protocol: 프로토콜
        mutant: 변이
        n: 고정할 프로세스 수 (None이면 무작위)

    Returns:
        SimConfig: 실행 설정
    """
    rng = np.random.default_rng(seed)
    if mutant is Mutant.SMALL_QUORUM:
        n = n or int(rng.choice(SMALL_QUORUM_SIZES))
        return SimConfig(
            n=n, seed=seed, protocol=protocol, mutant=mutant,
            delay=partition_schedule(n, rng),
            workload=WorkloadConfig(ops_per_process=3, read_fraction=0.5, register_count=2),
        )
    if mutant is Mutant.NO_WRITEBACK:
        n = n or int(rng.choice(NO_WRITEBACK_SIZES))
        return SimConfig(
            n=n, seed=seed, protocol=protocol, mutant=mutant,
            delay=random_schedule(n, rng),
            workload=WorkloadConfig(ops_per_process=3, read_fraction=0.7, register_count=1),
        )

    n = n or int(rng.choice(UNMUTATED_SIZES))
    crash_count = int(rng.integers(0, max_faulty(n) + 1))
    victims = rng.choice(np.arange(1, n + 1), size=crash_count, replace=False)
    crashes = [CrashSpec(pid=int(pid), at=int(rng.integers(0, 200))) for pid in victims]
    max_delay = int(rng.integers(1, 60))
    return SimConfig(
        n=n, seed=seed, protocol=protocol, crashes=crashes,
        delay=UniformDelay(min_ticks=1, max_ticks=max_delay),
        workload=WorkloadConfig(
            ops_per_process=int(rng.integers(1, 5)),
            read_fraction=float(rng.uniform(0.2, 0.8)),
            register_count=int(rng.integers(1, 4)),
            think_time=int(rng.integers(0, 20)),
        ),
    )


def run_one(seed: int, protocol: Protocol = Protocol.SC_ABD,
            mutant: Mutant = Mutant.NONE, n: Optional[int] = None) -> RunResult:
    """
    실행 하나: 시뮬레이션 후 검사와 감사

    SC-ABD는 합성 SC 검사, MW-ABD는 실시간 선형성 검사(선형성이면 SC).
    """
    cfg = build_fuzz_config(seed, protocol, mutant, n)
    trace = run_simulation(cfg)
    history = complete_history(trace.history)

    audits = {
        "logical_clocks": audit_logical_clocks(trace),
        "termination": audit_termination(trace),
        "replica_monotonicity": audit_replica_monotonicity(trace),
        "write_timestamps_unique": audit_write_timestamps_unique(
            history, per_register=protocol is Protocol.MW_ABD),
    }
    if protocol is Protocol.SC_ABD:
        audits["proposition1"] = audit_proposition1(trace)
    if mutant is Mutant.NONE:
        audits["round_counts"] = audit_round_counts(trace)

    try:
        if protocol is Protocol.SC_ABD:
            verdict = check_sc_compositional(history)
        else:
            verdict = check_linearizable_realtime(history)
    except DsmLabError as e:
        logger.error(f"Check of seed {seed} failed: {e}")
        return RunResult(seed=seed, n=cfg.n, operations=len(history.operations()),
                         verdict="error", audits=audits, error=str(e))

    return RunResult(seed=seed, n=cfg.n, operations=len(history.operations()),
                     verdict=verdict.outcome.value, audits=audits)


def run_campaign(runs: int, seed0: int = 0, protocol: Protocol = Protocol.SC_ABD,
                 mutant: Mutant = Mutant.NONE, n: Optional[int] = None,
                 workers: int = 1) -> CampaignReport:
    """
    퍼징 캠페인 실행

    Args:
        runs: 실행 횟수 (0이면 빈 보고서)
        seed0: 첫 시드
        protocol: 프로토콜
        mutant: 변이
        n: 고정할 프로세스 수
        workers: 프로세스 풀 크기 (1이면 순차 실행)

    Returns:
        CampaignReport: 시드 순으로 정렬된 결과
    """
    report = CampaignReport(protocol=protocol, mutant=mutant, seed0=seed0)
    seeds = [seed0 + i for i in range(runs)]

    if workers <= 1 or runs <= 1:
        results = [run_one(seed, protocol, mutant, n) for seed in seeds]
    else:
        results = []
        with ProcessPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(run_one, seed, protocol, mutant, n): seed for seed in seeds}
            for future in as_completed(futures):
                results.append(future.result())
        results.sort(key=lambda r: r.seed)

    report.results = results
    logger.info(f"Campaign {protocol.value}/{mutant.value}: {report.accepted}/{report.runs} accepted")
    return report
