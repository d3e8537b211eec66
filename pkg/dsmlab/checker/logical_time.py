"""
논리 시간 히스토리 (H^lt) 구성
"""
from dsmlab.core.exceptions import MissingLogicalTimeError, NotWellFormedError
from dsmlab.core.history import History, LogicalTimeHistory, histories_equivalent, is_well_formed


def build_logical_time_history(h: History) -> LogicalTimeHistory:
    """
    이벤트를 (lt, 프로세스 ID, 프로세스 내 순번)으로 안정 정렬

    Args:
        h: lt가 기록된 well-formed 히스토리

    Returns:
        LogicalTimeHistory: h와 동치인 H^lt
    """
    missing = [e for e in h.events if e.lt is None]
    if missing:
        first = missing[0]
        raise MissingLogicalTimeError(
            f"{len(missing)} events lack a logical time (first: opid={first.opid} {first.kind.value})"
        )
    if not is_well_formed(h):
        raise NotWellFormedError("history is not well-formed")

    counters: dict[int, int] = {}
    keyed = []
    for e in h.events:
        index = counters.get(e.proc, 0)
        counters[e.proc] = index + 1
        keyed.append(((e.lt, e.proc, index), e))
    keyed.sort(key=lambda item: item[0])

    hlt = LogicalTimeHistory(events=tuple(e for _, e in keyed))
    if not histories_equivalent(hlt, h):
        # 프로세스 안에서 lt가 증가하지 않으면 순서가 뒤집힌다
        raise NotWellFormedError("logical times do not increase within a process; H^lt is not equivalent to H")
    return hlt
