"""
closed-loop 워크로드 생성
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from dsmlab.core.history import OpKind
from dsmlab.simnet.config import SimConfig


@dataclass(frozen=True)
class PlannedOp:
    """프로세스가 순서대로 호출할 연산"""
    pid: int
    index: int
    kind: OpKind
    reg: str
    value: Optional[int]
    at: int  # 가장 이른 호출 시각


def generate_workload(cfg: SimConfig, rng: np.random.Generator) -> list[PlannedOp]:
    """
    프로세스별 연산 계획 생성

    스크립트가 있으면 그대로 사용하고, 없으면 프로세스마다 ops_per_process개의 연산을
    난수로 뽑는다 (읽기/쓰기, 레지스터). 첫 연산은 0..think_time 사이에 시작하고,
    이후 연산은 이전 연산 완료 후 think_time 뒤에 호출된다 (시뮬레이터가 처리).

    Args:
        cfg: 시뮬레이션 설정
        rng: 시드 고정 난수 생성기

    Returns:
        list: (pid, index) 순서의 PlannedOp
    """
    wl = cfg.workload
    plan: list[PlannedOp] = []

    if wl.script is not None:
        for pid in sorted(wl.script):
            for index, op in enumerate(wl.script[pid]):
                plan.append(PlannedOp(
                    pid=pid, index=index, kind=OpKind(op.kind), reg=op.reg,
                    value=op.value, at=op.at,
                ))
        return plan

    for pid in range(1, cfg.n + 1):
        for index in range(wl.ops_per_process):
            is_read = bool(rng.random() < wl.read_fraction)
            reg = f"x{int(rng.integers(wl.register_count))}"
            at = int(rng.integers(0, wl.think_time + 1)) if index == 0 else 0
            # 쓰기 값은 실행 안에서 유일 (읽기가 어느 쓰기를 봤는지 식별 가능)
            value = None if is_read else (index + 1) * cfg.n + pid
            plan.append(PlannedOp(
                pid=pid, index=index, kind=OpKind.READ if is_read else OpKind.WRITE,
                reg=reg, value=value, at=at,
            ))
    return plan
