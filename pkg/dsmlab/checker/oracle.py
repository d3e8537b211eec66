"""
순차 일관성(SC) 전수 검사 오라클

프로세스별 연산 순서를 유지하는 모든 인터리빙 중 합법인 것이 있는지 확인한다.
작은 히스토리 전용.
"""
import logging
from typing import Optional

from dsmlab.core.config import get_settings
from dsmlab.core.exceptions import NotWellFormedError, OracleCapExceeded
from dsmlab.core.history import History, is_well_formed
from dsmlab.core.types import INITIAL_PAIR
from dsmlab.checker.legality import to_sequential
from dsmlab.checker.verdict import Verdict, Violation

logger = logging.getLogger(__name__)

CONDITION = "no legal interleaving of the per-process sequences"


def check_sc_bruteforce(h: History, max_ops: Optional[int] = None) -> Verdict:
    """
    SC 정확 판정

    Args:
        h: 완결된 well-formed 히스토리
        max_ops: 연산 수 상한 (기본값: 설정 ORACLE_MAX_OPS)

    Returns:
        Verdict: accepted(증인 포함) 또는 rejected

    Raises:
        OracleCapExceeded: 연산 수가 상한을 넘는 경우
    """
    if max_ops is None:
        max_ops = get_settings().ORACLE_MAX_OPS
    if not is_well_formed(h):
        raise NotWellFormedError("history is not well-formed")
    if not h.is_complete():
        raise NotWellFormedError(f"history has {len(h.pending())} pending operations")

    ops = h.operations()
    if len(ops) > max_ops:
        raise OracleCapExceeded(f"oracle refuses {len(ops)} operations (cap {max_ops})")

    procs = h.processes()
    sequences = [[op for op in ops if op.proc == p] for p in procs]

    visited: set[tuple[tuple[int, ...], tuple]] = set()
    deepest: tuple[int, tuple[int, ...]] = (-1, ())
    stack: list[tuple[tuple[int, ...], tuple, dict, tuple]] = [(tuple(0 for _ in procs), (), {}, ())]
    explored = 0

    while stack:
        cursor, memory, writers, path = stack.pop()
        if len(path) == len(ops):
            return Verdict.accept(to_sequential(h, path), explored_states=explored, method="bruteforce")
        if (cursor, memory) in visited:
            continue
        visited.add((cursor, memory))
        explored += 1

        values = dict(memory)
        children = []
        for k, seq in enumerate(sequences):
            if cursor[k] == len(seq):
                continue
            op = seq[cursor[k]]
            advanced = cursor[:k] + (cursor[k] + 1,) + cursor[k + 1:]
            if op.is_write:
                nxt = dict(values)
                nxt[op.reg] = op.arg
                children.append((advanced, tuple(sorted(nxt.items())), {**writers, op.reg: op.opid}, path + (op.opid,)))
            elif op.ret == values.get(op.reg, INITIAL_PAIR.val):
                children.append((advanced, memory, writers, path + (op.opid,)))
            elif len(path) > deepest[0]:
                blocking = writers.get(op.reg)
                deepest = (len(path), (blocking, op.opid) if blocking is not None else (op.opid,))
        stack.extend(reversed(children))

    logger.debug(f"Oracle rejected {len(ops)} ops after {explored} states")
    return Verdict.reject(
        Violation(register=None, condition=CONDITION, conflicting_ops=deepest[1]),
        explored_states=explored, method="bruteforce",
    )
