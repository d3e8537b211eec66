"""
미완료 연산 처리 (mid_op_crash 실행 전용)
"""
import logging
from dataclasses import replace

from dsmlab.core.history import Event, EventKind, History
from dsmlab.core.types import OK

logger = logging.getLogger(__name__)


def complete_history(h: History) -> History:
    """
    미완료 연산을 정리해 완결 히스토리로 변환

    - 타임스탬프가 있는 미완료 쓰기: 유지, 히스토리 끝에 OK 응답 추가
    - 미완료 읽기, 갱신 단계를 시작하지 못한 쓰기: 호출 이벤트 제거

    Args:
        h: well-formed 히스토리

    Returns:
        History: 완결 히스토리 (미완료 연산이 없으면 h 그대로)
    """
    pending = h.pending()
    if not pending:
        return h

    kept = {op.opid: replace(op, ret=OK) for op in pending if op.is_write and op.ts is not None}
    dropped = {op.opid for op in pending} - set(kept)

    events: list[Event] = []
    for e in h.events:
        if e.opid in dropped:
            continue
        if e.opid in kept:
            e = replace(e, op=kept[e.opid])
        events.append(e)

    rt = max((e.rt for e in h.events), default=0)
    lts = [e.lt for e in h.events if e.lt is not None]
    lt = max(lts) if lts else None
    for opid, op in kept.items():
        rt += 1
        if lt is not None:
            lt += 1
        events.append(Event(kind=EventKind.RESPONSE, op=op, rt=rt, lt=lt, proc=op.proc))

    logger.debug(f"Completed {len(kept)} pending writes, dropped {len(dropped)} pending operations")
    return h.with_events(events)
