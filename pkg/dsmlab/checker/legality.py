"""
순차 히스토리 합법성 검사 및 증인(witness) 구성 유틸
"""
from typing import Iterable, Optional

from dsmlab.core.exceptions import NotSequentialError
from dsmlab.core.history import Event, History, OperationDescriptor
from dsmlab.core.types import INITIAL_PAIR, RegisterId, Value


def sequential_operations(s: History) -> list[OperationDescriptor]:
    """
    순차 히스토리를 연산 목록으로 변환

    Args:
        s: 호출 바로 뒤에 같은 연산의 응답이 오는 히스토리

    Returns:
        list[OperationDescriptor]: 순서대로의 연산

    Raises:
        NotSequentialError: 순차 히스토리가 아닌 경우
    """
    events = s.events
    if len(events) % 2:
        raise NotSequentialError(f"sequential history must have an even number of events, got {len(events)}")
    ops = []
    for i in range(0, len(events), 2):
        inv, res = events[i], events[i + 1]
        if not inv.is_invocation or res.is_invocation or inv.opid != res.opid:
            raise NotSequentialError(f"events {i} and {i + 1} are not a matching invocation/response pair")
        ops.append(res.op)
    return ops


def is_legal_order(ops: Iterable[OperationDescriptor]) -> Optional[OperationDescriptor]:
    """
    연산 순서의 합법성 검사

    Returns:
        Optional[OperationDescriptor]: 처음으로 규칙을 어긴 읽기, 합법이면 None
    """
    memory: dict[RegisterId, Value] = {}
    for op in ops:
        if op.is_write:
            memory[op.reg] = op.arg
        elif op.ret != memory.get(op.reg, INITIAL_PAIR.val):
            return op
    return None


def is_legal_sequential(s: History) -> bool:
    """
    합법 판정: 모든 읽기가 같은 레지스터의 직전 쓰기 값(없으면 0)을 반환

    Args:
        s: 순차 히스토리

    Returns:
        bool: 합법이면 True

    Raises:
        NotSequentialError: 순차 히스토리가 아닌 경우
    """
    return is_legal_order(sequential_operations(s)) is None


def to_sequential(source: History, order: Iterable[int]) -> History:
    """
    연산 ID 순서대로 원본의 (호출, 응답) 이벤트를 이어 붙인 순차 히스토리
    """
    inv: dict[int, Event] = {}
    res: dict[int, Event] = {}
    for e in source.events:
        (inv if e.is_invocation else res)[e.opid] = e
    events: list[Event] = []
    for opid in order:
        events.append(inv[opid])
        events.append(res[opid])
    return History(events=tuple(events))
