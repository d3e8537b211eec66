"""
시뮬레이션 결과 (Trace) 모델
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from dsmlab.core.history import History, OpKind
from dsmlab.core.messages import Message
from dsmlab.core.types import Timestamp
from dsmlab.protocol.state import Mutant, Protocol


class RunOutcome(Enum):
    """실행 종료 상태"""
    QUIESCENT = "quiescent"
    HORIZON_EXHAUSTED = "horizon_exhausted"
    STALLED = "stalled"  # 큐는 비었는데 정상 프로세스의 연산이 남음


class DeliveryStatus(Enum):
    """메시지 처리 결과"""
    DELIVERED = "delivered"
    DISCARDED = "discarded"  # rid 불일치로 핸들러 미실행
    DROPPED = "dropped"      # 수신자 크래시
    IN_FLIGHT = "in_flight"  # horizon 도달로 미전달


@dataclass
class MessageRecord:
    """메시지 송수신 기록"""
    msg: Message
    send_rt: int
    send_lt: int
    recv_rt: Optional[int] = None
    recv_lt: Optional[int] = None
    status: DeliveryStatus = DeliveryStatus.IN_FLIGHT


@dataclass(frozen=True)
class StepRecord:
    """핸들러 실행 한 번"""
    pid: int
    rt: int
    lt: int
    stimulus: str  # "invoke" 또는 메시지 종류


@dataclass(frozen=True)
class StoreRecord:
    """handle_update 이후 저장된 타임스탬프"""
    pid: int
    rt: int
    reg: str
    ts: Timestamp


@dataclass(frozen=True)
class CrashRecord:
    """크래시 기록 (예약 시각, 실제 시각)"""
    pid: int
    scheduled_at: int
    effective_at: int


@dataclass
class Trace:
    """시뮬레이션 전체 기록"""
    protocol: Protocol
    n: int
    seed: int
    mutant: Mutant
    outcome: RunOutcome
    history: History
    message_log: list[MessageRecord] = field(default_factory=list)
    steps: list[StepRecord] = field(default_factory=list)
    store_log: list[StoreRecord] = field(default_factory=list)
    rounds: dict[int, int] = field(default_factory=dict)
    crash_log: list[CrashRecord] = field(default_factory=list)
    final_tick: int = 0

    @property
    def crashed(self) -> set[int]:
        return {c.pid for c in self.crash_log}

    @property
    def correct(self) -> set[int]:
        return set(range(1, self.n + 1)) - self.crashed

    def rounds_by_kind(self) -> dict[OpKind, list[int]]:
        """완료된 연산의 종류별 라운드 수 목록"""
        kinds = {op.opid: op.kind for op in self.history.operations()}
        spans = self.history.intervals()
        result: dict[OpKind, list[int]] = {OpKind.READ: [], OpKind.WRITE: []}
        for opid, rounds in sorted(self.rounds.items()):
            if spans.get(opid, (None, None))[1] is not None:
                result[kinds[opid]].append(rounds)
        return result
