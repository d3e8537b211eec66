"""
이산 사건 큐 - (due, seq) 순서로 꺼낸다
"""
import heapq
from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class SimEventKind(Enum):
    DELIVER = "deliver"
    INVOKE = "invoke"
    CRASH = "crash"


@dataclass(order=True)
class SimEvent:
    """예약된 사건"""
    due: int
    seq: int
    kind: SimEventKind = field(compare=False)
    pid: int = field(compare=False)
    payload: Any = field(compare=False, default=None)


class EventQueue:
    """결정적 우선순위 큐 (seq는 단조 증가)"""

    def __init__(self):
        self._heap: list[SimEvent] = []
        self._seq = 0

    def __len__(self) -> int:
        return len(self._heap)

    def push(self, due: int, kind: SimEventKind, pid: int, payload: Any = None) -> SimEvent:
        event = SimEvent(due=due, seq=self._seq, kind=kind, pid=pid, payload=payload)
        self._seq += 1
        heapq.heappush(self._heap, event)
        return event

    def pop(self) -> SimEvent:
        return heapq.heappop(self._heap)

    def peek_due(self) -> int | None:
        return self._heap[0].due if self._heap else None
