"""
레지스터별 선형성 검사를 합성한 순차 일관성(SC) 검사

H^lt를 만든 뒤 각 레지스터 부분 히스토리 H^lt|x의 선형성을 확인한다.
빠른 경로는 타임스탬프 증인, 실패하면 전수 탐색으로 넘어간다.
"""
import heapq
import logging
from typing import Optional

from dsmlab.core.exceptions import CheckerError, MalformedInstrumentationError, NotWellFormedError
from dsmlab.core.history import History, project_register
from dsmlab.core.types import INITIAL_TIMESTAMP
from dsmlab.checker.legality import to_sequential
from dsmlab.checker.linearizability import check_linearizable
from dsmlab.checker.logical_time import build_logical_time_history
from dsmlab.checker.verdict import Outcome, Verdict, combine
from dsmlab.checker.witness import construct_timestamp_witness, validate_witness

logger = logging.getLogger(__name__)


def _check_register(hx: History, register: str, max_states: Optional[int], by_position: bool = False) -> Verdict:
    """레지스터 하나: 타임스탬프 증인 우선, 실패 시 탐색"""
    if all(op.ts is not None for op in hx.operations()):
        try:
            witness = construct_timestamp_witness(hx, by_position=by_position)
        except MalformedInstrumentationError as e:
            logger.debug(f"Timestamp witness unavailable for {register}: {e}")
        else:
            failed = validate_witness(witness, hx, preserve_precedence=True)
            if failed is None:
                return Verdict.accept(witness, register=register, method="timestamp")
            logger.debug(f"Timestamp witness for {register} fails the {failed} condition, searching")
    return check_linearizable(hx, max_states=max_states, register=register)


def compose_witness(h: History, parts: list[Verdict], preserve_precedence: bool = False) -> History:
    """
    레지스터별 증인을 하나의 순차 증인으로 합성

    h의 구간 선행 관계, 프로세스 순서, 레지스터별 증인 순서를 모두 지키는 위상 정렬.
    후보가 여럿이면 (타임스탬프, 호출 위치, 프로세스 ID) 순으로 고른다.

    Args:
        h: 선행 관계의 기준 히스토리 (SC 검사는 H^lt, 실시간 선형성은 원본)
        parts: 레지스터별 accepted Verdict
        preserve_precedence: 결과를 선형성 증인으로 검증할지 여부

    Returns:
        History: 인증된 순차 증인

    Raises:
        CheckerError: 정렬 불가(순환) 또는 인증 실패
    """
    spans = h.intervals()
    ops = {op.opid: op for op in h.operations()}
    succ: dict[int, list[int]] = {opid: [] for opid in ops}
    indegree = {opid: 0 for opid in ops}

    def edge(a: int, b: int) -> None:
        succ[a].append(b)
        indegree[b] += 1

    last_of_proc: dict[int, int] = {}
    for e in h.events:
        if e.is_invocation:
            if e.proc in last_of_proc:
                edge(last_of_proc[e.proc], e.opid)
            last_of_proc[e.proc] = e.opid
    for part in parts:
        witness_order = [e.opid for e in part.witness.events if e.is_invocation]
        for a, b in zip(witness_order, witness_order[1:]):
            edge(a, b)

    def priority(opid: int) -> tuple:
        op = ops[opid]
        return (op.ts or INITIAL_TIMESTAMP, spans[opid][0], op.proc, opid)

    # 아직 배치되지 않은 연산의 응답 위치 (구간 선행 관계의 경계)
    unplaced_res = [(spans[opid][1], opid) for opid in ops]
    heapq.heapify(unplaced_res)
    placed: set[int] = set()

    ready = [priority(opid) for opid, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    blocked: list[tuple] = []
    order: list[int] = []

    while ready:
        while unplaced_res and unplaced_res[0][1] in placed:
            heapq.heappop(unplaced_res)
        frontier = unplaced_res[0][0] if unplaced_res else len(h.events)
        item = heapq.heappop(ready)
        opid = item[-1]
        if spans[opid][0] > frontier:
            blocked.append(item)
            continue
        order.append(opid)
        placed.add(opid)
        for nxt in succ[opid]:
            indegree[nxt] -= 1
            if indegree[nxt] == 0:
                heapq.heappush(ready, priority(nxt))
        for item in blocked:
            heapq.heappush(ready, item)
        blocked.clear()

    if len(order) != len(ops):
        raise CheckerError(f"per-register witnesses cannot be merged ({len(order)}/{len(ops)} ops placed)")

    witness = to_sequential(h, order)
    failed = validate_witness(witness, h, preserve_precedence=preserve_precedence)
    if failed is not None:
        raise CheckerError(f"composed witness fails the {failed} condition")
    return witness


def _compose_verdict(base: History, parts: list[Verdict], method: str, preserve_precedence: bool) -> Verdict:
    outcome = combine(parts)
    explored = sum(p.explored_states for p in parts)
    if outcome is Outcome.REJECTED:
        first = next(p for p in parts if p.outcome is Outcome.REJECTED)
        return Verdict.reject(first.violation, explored_states=explored, method=method, parts=tuple(parts))
    if outcome is Outcome.UNDECIDED:
        return Verdict(outcome=outcome, explored_states=explored, method=method, parts=tuple(parts))
    witness = compose_witness(base, parts, preserve_precedence=preserve_precedence)
    return Verdict.accept(witness, explored_states=explored, method=method, parts=tuple(parts))


def check_sc_compositional(h: History, max_states: Optional[int] = None) -> Verdict:
    """
    합성 SC 검사: 모든 레지스터 x에 대해 LIN(H^lt|x)이면 SC(H)

    Args:
        h: 완결된, lt가 기록된 well-formed 히스토리
        max_states: 전수 탐색 상한

    Returns:
        Verdict: 전체 판정 (parts에 레지스터별 판정)
    """
    if not h.is_complete():
        raise NotWellFormedError(f"history has {len(h.pending())} pending operations")
    hlt = build_logical_time_history(h)
    parts = [_check_register(project_register(hlt, x), x, max_states) for x in hlt.registers()]
    verdict = _compose_verdict(hlt, parts, "compositional", preserve_precedence=False)
    logger.debug(f"Compositional check: {verdict.outcome.value} over {len(parts)} registers")
    return verdict


def check_linearizable_realtime(h: History, max_states: Optional[int] = None) -> Verdict:
    """
    실시간 선형성 검사 (레지스터별 판정 후 합성)

    Args:
        h: 완결된 well-formed 히스토리 (lt 불필요)
        max_states: 전수 탐색 상한

    Returns:
        Verdict: 전체 판정
    """
    if not h.is_complete():
        raise NotWellFormedError(f"history has {len(h.pending())} pending operations")
    parts = [_check_register(project_register(h, x), x, max_states, by_position=True) for x in h.registers()]
    return _compose_verdict(h, parts, "linearizable", preserve_precedence=True)
