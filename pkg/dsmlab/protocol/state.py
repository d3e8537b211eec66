"""
프로토콜 상태 모델 및 Enum 정의
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Optional

from dsmlab.core.clock import quorum_size
from dsmlab.core.history import OpKind
from dsmlab.core.messages import Message
from dsmlab.core.types import (
    INITIAL_PAIR, LogicalTime, OpResult, ProcessId, RegisterId, RequestId,
    Timestamp, TimestampValuePair, Value,
)


class Phase(Enum):
    """진행 중인 단계"""
    IDLE = "idle"
    QUERYING = "querying"
    UPDATING = "updating"


class Protocol(Enum):
    """프로토콜 종류"""
    SC_ABD = "sc_abd"
    MW_ABD = "mw_abd"


class Mutant(Enum):
    """검사기 판별력 확인용 변이"""
    NONE = "none"
    SMALL_QUORUM = "small_quorum"   # quorum = floor(n/2)
    NO_WRITEBACK = "no_writeback"   # 읽기가 갱신 단계 생략


@dataclass(frozen=True)
class Invoke:
    """연산 호출 자극"""
    kind: OpKind
    reg: RegisterId
    value: Optional[Value] = None
    opid: Optional[int] = None


Stimulus = Invoke | Message


@dataclass(frozen=True)
class Completion:
    """연산 완료 (응답 이벤트의 재료)"""
    opid: Optional[int]
    ret: OpResult
    ts: Optional[Timestamp]


@dataclass(frozen=True)
class ReplicaState:
    """SC-ABD 프로세스 상태"""
    pid: ProcessId
    n: int
    lt: LogicalTime = 0
    rid: RequestId = 0
    tvps: Mapping[RegisterId, TimestampValuePair] = field(default_factory=dict)
    # 질의 단계: (쌍, 응답자), 갱신 단계: 응답자
    responses: frozenset = frozenset()
    reading: bool = False
    rreg: Optional[RegisterId] = None
    rval: Value = 0
    phase: Phase = Phase.IDLE
    opid: Optional[int] = None
    op_ts: Optional[Timestamp] = None
    mutant: Mutant = Mutant.NONE

    @classmethod
    def initial(cls, pid: ProcessId, n: int, mutant: Mutant = Mutant.NONE) -> "ReplicaState":
        return cls(pid=pid, n=n, mutant=mutant)

    @property
    def quorum(self) -> int:
        """단계 종료에 필요한 응답 수"""
        if self.mutant is Mutant.SMALL_QUORUM:
            return max(self.n // 2, 1)
        return quorum_size(self.n)

    def stored(self, reg: RegisterId) -> TimestampValuePair:
        """tvps[reg] (기본값 ((0,0),0))"""
        return self.tvps.get(reg, INITIAL_PAIR)


@dataclass(frozen=True)
class MwAbdState(ReplicaState):
    """MW-ABD 프로세스 상태 - 쓰기가 질의/갱신 두 단계"""
    wval: Optional[Value] = None


@dataclass(frozen=True)
class StepOutput:
    """한 번의 스텝 결과"""
    state: ReplicaState
    outbox: tuple[Message, ...] = ()
    completion: Optional[Completion] = None
    new_round: bool = False
