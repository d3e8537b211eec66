"""
히스토리 모델 (연산, 이벤트, 히스토리) 및 투영/동치 연산
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator, Optional

from dsmlab.core.exceptions import HistoryFormatError
from dsmlab.core.types import (
    LogicalTime, OpResult, ProcessId, RegisterId, Timestamp, Value,
)


class OpKind(Enum):
    """연산 종류"""
    READ = "read"
    WRITE = "write"


class EventKind(Enum):
    """이벤트 종류"""
    INVOCATION = "inv"
    RESPONSE = "res"


@dataclass(frozen=True)
class OperationDescriptor:
    """연산 기술자"""
    opid: int
    proc: ProcessId
    kind: OpKind
    reg: RegisterId
    arg: Optional[Value] = None
    ret: Optional[OpResult] = None
    ts: Optional[Timestamp] = None  # 갱신 단계에서 사용한 타임스탬프

    @property
    def is_read(self) -> bool:
        return self.kind is OpKind.READ

    @property
    def is_write(self) -> bool:
        return self.kind is OpKind.WRITE

    def label(self) -> str:
        """사람이 읽기 쉬운 표기 (예: p1:w(x,1), p2:r(x)->1)"""
        if self.is_write:
            return f"p{self.proc}:w({self.reg},{self.arg})"
        return f"p{self.proc}:r({self.reg})->{self.ret}"


@dataclass(frozen=True)
class Event:
    """호출/응답 이벤트"""
    kind: EventKind
    op: OperationDescriptor
    rt: int
    lt: Optional[LogicalTime]
    proc: ProcessId

    @property
    def opid(self) -> int:
        return self.op.opid

    @property
    def is_invocation(self) -> bool:
        return self.kind is EventKind.INVOCATION

    def key(self) -> tuple[int, EventKind]:
        """동치 비교용 키 (연산 ID, 종류)"""
        return (self.op.opid, self.kind)


@dataclass(frozen=True)
class History:
    """이벤트 시퀀스"""
    events: tuple[Event, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self) -> Iterator[Event]:
        return iter(self.events)

    def with_events(self, events) -> "History":
        """같은 타입으로 이벤트만 교체"""
        return replace(self, events=tuple(events))

    def operations(self) -> list[OperationDescriptor]:
        """호출 순서의 연산 목록 (응답 이벤트의 기술자 우선)"""
        ops: dict[int, OperationDescriptor] = {}
        for e in self.events:
            if e.is_invocation:
                ops.setdefault(e.opid, e.op)
            else:
                ops[e.opid] = e.op
        return list(ops.values())

    def intervals(self) -> dict[int, tuple[int, Optional[int]]]:
        """연산 ID -> (호출 위치, 응답 위치 또는 None)"""
        spans: dict[int, list] = {}
        for idx, e in enumerate(self.events):
            if e.is_invocation:
                spans[e.opid] = [idx, None]
            elif e.opid in spans:
                spans[e.opid][1] = idx
        return {opid: (inv, res) for opid, (inv, res) in spans.items()}

    def pending(self) -> list[OperationDescriptor]:
        """응답이 없는 연산"""
        spans = self.intervals()
        return [op for op in self.operations() if spans[op.opid][1] is None]

    def is_complete(self) -> bool:
        return not self.pending()

    def precedes(self, opid1: int, opid2: int) -> bool:
        """o1 <_H o2: o1의 응답이 o2의 호출보다 앞섬"""
        spans = self.intervals()
        res1 = spans[opid1][1]
        return res1 is not None and res1 < spans[opid2][0]

    def registers(self) -> list[RegisterId]:
        return sorted({e.op.reg for e in self.events})

    def processes(self) -> list[ProcessId]:
        return sorted({e.proc for e in self.events})


class LogicalTimeHistory(History):
    """논리 시간 순으로 재정렬된 히스토리 (H^lt)"""


def project_process(h: History, p: ProcessId) -> History:
    """H|p: 프로세스 p의 이벤트만 (순서 유지)"""
    return h.with_events(e for e in h.events if e.proc == p)


def project_register(h: History, x: RegisterId) -> History:
    """H|x: 레지스터 x 대상 연산의 이벤트만 (순서 유지)"""
    return h.with_events(e for e in h.events if e.op.reg == x)


def histories_equivalent(h1: History, h2: History) -> bool:
    """
    H1 ≃ H2 판정

    모든 프로세스에 대해 프로세스 부분 히스토리가 (연산 ID, 이벤트 종류) 기준으로 같으면 참.
    """
    for p in set(h1.processes()) | set(h2.processes()):
        left = [e.key() for e in h1.events if e.proc == p]
        right = [e.key() for e in h2.events if e.proc == p]
        if left != right:
            return False
    return True


def is_well_formed(h: History) -> bool:
    """
    well-formed 판정: 모든 프로세스 부분 히스토리가 순차 히스토리

    Returns:
        bool: 각 프로세스에서 호출 다음에 같은 연산의 응답이 오고 (마지막은 pending 허용)
              연산 ID가 중복되지 않으면 True
    """
    seen: set[int] = set()
    outstanding: dict[ProcessId, Optional[int]] = {}
    for e in h.events:
        if e.proc != e.op.proc:
            return False
        current = outstanding.get(e.proc)
        if e.is_invocation:
            if current is not None or e.opid in seen:
                return False
            seen.add(e.opid)
            outstanding[e.proc] = e.opid
        else:
            if current != e.opid:
                return False
            outstanding[e.proc] = None
    return True


class HistoryBuilder:
    """
    히스토리를 단계적으로 구성하는 빌더

    파일 파싱과 테스트용 수작업 히스토리에서 공통으로 사용한다.
    rt를 생략하면 이벤트마다 1씩 증가하는 값을 부여한다.
    """

    def __init__(self):
        self._ops: dict[int, dict] = {}
        self._events: list[tuple[EventKind, int, int, Optional[LogicalTime]]] = []
        self._next_opid = 1
        self._rt = 0

    def _tick(self, rt: Optional[int]) -> int:
        if rt is None:
            rt = self._rt
        self._rt = max(self._rt, rt + 1)
        return rt

    def invoke(self, proc: ProcessId, kind, reg: RegisterId, arg: Optional[Value] = None, *,
               opid: Optional[int] = None, rt: Optional[int] = None,
               lt: Optional[LogicalTime] = None, ts: Optional[Timestamp] = None) -> int:
        """호출 이벤트 추가 후 연산 ID 반환"""
        if opid is None:
            opid = self._next_opid
        if opid in self._ops:
            raise HistoryFormatError(f"duplicate invocation of opid {opid}")
        self._next_opid = max(self._next_opid, opid + 1)
        self._ops[opid] = {
            "opid": opid, "proc": proc, "kind": OpKind(kind), "reg": reg,
            "arg": arg, "ret": None, "ts": ts, "responded": False,
        }
        self._events.append((EventKind.INVOCATION, opid, self._tick(rt), lt))
        return opid

    def respond(self, opid: int, ret: Optional[OpResult], *, rt: Optional[int] = None,
                lt: Optional[LogicalTime] = None, ts: Optional[Timestamp] = None) -> None:
        """응답 이벤트 추가"""
        op = self._ops.get(opid)
        if op is None:
            raise HistoryFormatError(f"response for unknown opid {opid}")
        if op["responded"]:
            raise HistoryFormatError(f"second response for opid {opid}")
        op["responded"] = True
        op["ret"] = ret
        if ts is not None:
            op["ts"] = ts
        self._events.append((EventKind.RESPONSE, opid, self._tick(rt), lt))

    def write(self, proc: ProcessId, reg: RegisterId, val: Value, *,
              lt: Optional[tuple[int, int]] = None, ts: Optional[Timestamp] = None) -> int:
        """즉시 완료되는 쓰기 (lt는 (호출, 응답) 쌍)"""
        inv_lt, res_lt = lt if lt is not None else (None, None)
        opid = self.invoke(proc, OpKind.WRITE, reg, val, lt=inv_lt)
        self.respond(opid, "OK", lt=res_lt, ts=ts)
        return opid

    def read(self, proc: ProcessId, reg: RegisterId, ret: Value, *,
             lt: Optional[tuple[int, int]] = None, ts: Optional[Timestamp] = None) -> int:
        """즉시 완료되는 읽기"""
        inv_lt, res_lt = lt if lt is not None else (None, None)
        opid = self.invoke(proc, OpKind.READ, reg, lt=inv_lt)
        self.respond(opid, ret, lt=res_lt, ts=ts)
        return opid

    def build(self) -> History:
        """History 생성 (모든 이벤트가 같은 연산 기술자를 공유)"""
        descriptors = {
            opid: OperationDescriptor(
                opid=op["opid"], proc=op["proc"], kind=op["kind"], reg=op["reg"],
                arg=op["arg"], ret=op["ret"], ts=op["ts"],
            )
            for opid, op in self._ops.items()
        }
        events = tuple(
            Event(kind=kind, op=descriptors[opid], rt=rt, lt=lt, proc=descriptors[opid].proc)
            for kind, opid, rt, lt in self._events
        )
        return History(events=events)
