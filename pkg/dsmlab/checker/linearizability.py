"""
선형성(linearizability) 검사

Wing & Gong 방식의 전수 탐색: 선행 연산이 모두 배치된 연산만 다음 후보가 되며,
(배치된 연산 집합, 레지스터 값) 상태를 메모이제이션한다.
"""
import logging
from typing import Optional

from dsmlab.core.config import get_settings
from dsmlab.core.exceptions import NotWellFormedError
from dsmlab.core.history import History, is_well_formed
from dsmlab.core.types import INITIAL_PAIR
from dsmlab.checker.legality import to_sequential
from dsmlab.checker.verdict import Outcome, Verdict, Violation

logger = logging.getLogger(__name__)

CONDITION = "no legal sequential witness preserves real-time precedence"


def _predecessor_masks(h: History, order: list[int]) -> list[int]:
    """연산마다 선행해야 하는 연산 집합(비트마스크)"""
    spans = h.intervals()
    index = {opid: i for i, opid in enumerate(order)}
    masks = [0] * len(order)
    for b in order:
        inv_b = spans[b][0]
        for a in order:
            res_a = spans[a][1]
            if res_a < inv_b:
                masks[index[b]] |= 1 << index[a]
    return masks


def check_linearizable(hx: History, max_states: Optional[int] = None, register: Optional[str] = None) -> Verdict:
    """
    선형성 판정

    Args:
        hx: 완결된 well-formed 히스토리 (단일 레지스터가 아니어도 동작)
        max_states: 탐색 상태 상한 (기본값: 설정 LIN_MAX_STATES)
        register: Verdict에 기록할 레지스터 이름

    Returns:
        Verdict: accepted(증인 포함) / rejected(위반 포함) / undecided(상한 도달)
    """
    if max_states is None:
        max_states = get_settings().LIN_MAX_STATES
    if not is_well_formed(hx):
        raise NotWellFormedError("history is not well-formed")
    if not hx.is_complete():
        raise NotWellFormedError(f"history has {len(hx.pending())} pending operations")

    ops = hx.operations()
    order = [op.opid for op in ops]
    preds = _predecessor_masks(hx, order)
    full = (1 << len(ops)) - 1

    visited: set[tuple[int, tuple]] = set()
    # (배치 마스크, 레지스터 값, 레지스터별 마지막 쓰기, 배치 순서)
    stack: list[tuple[int, tuple, dict, tuple]] = [(0, (), {}, ())]
    deepest: tuple[int, tuple[int, ...]] = (-1, ())
    explored = 0

    while stack:
        mask, memory, writers, path = stack.pop()
        if mask == full:
            logger.debug(f"Linearizable after {explored} states ({len(ops)} ops)")
            return Verdict.accept(
                to_sequential(hx, path), register=register,
                explored_states=explored, method="search",
            )
        key = (mask, memory)
        if key in visited:
            continue
        visited.add(key)
        explored += 1
        if explored > max_states:
            logger.warning(f"Linearizability search hit the cap of {max_states} states "
                           f"(register={register}, {len(ops)} ops)")
            return Verdict(outcome=Outcome.UNDECIDED, register=register,
                           explored_states=explored, method="search")

        values = dict(memory)
        children = []
        for i, op in enumerate(ops):
            bit = 1 << i
            if mask & bit or preds[i] & ~mask:
                continue
            if op.is_write:
                nxt = dict(values)
                nxt[op.reg] = op.arg
                nxt_writers = {**writers, op.reg: op.opid}
                children.append((mask | bit, tuple(sorted(nxt.items())), nxt_writers, path + (op.opid,)))
            elif op.ret == values.get(op.reg, INITIAL_PAIR.val):
                children.append((mask | bit, memory, writers, path + (op.opid,)))
            elif len(path) > deepest[0]:
                blocking = writers.get(op.reg)
                deepest = (len(path), (blocking, op.opid) if blocking is not None else (op.opid,))
        stack.extend(reversed(children))

    logger.debug(f"Not linearizable after {explored} states (register={register})")
    return Verdict.reject(
        Violation(register=register, condition=CONDITION, conflicting_ops=deepest[1]),
        register=register, explored_states=explored, method="search",
    )
