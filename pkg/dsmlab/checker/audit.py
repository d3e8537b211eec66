"""
시뮬레이션 Trace 감사 (논리 시계, 타임스탬프 순서, 라운드 수, 종료성 등)
"""
import bisect
import logging

from dsmlab.core.history import History, OpKind, project_register
from dsmlab.protocol.state import Protocol
from dsmlab.simnet.trace import DeliveryStatus, RunOutcome, Trace
from dsmlab.checker.completion import complete_history
from dsmlab.checker.logical_time import build_logical_time_history

logger = logging.getLogger(__name__)

# 프로토콜별 연산당 라운드 수 (쓰기, 읽기)
EXPECTED_ROUNDS = {
    Protocol.SC_ABD: {OpKind.WRITE: 1, OpKind.READ: 2},
    Protocol.MW_ABD: {OpKind.WRITE: 2, OpKind.READ: 2},
}


def audit_logical_clocks(t: Trace) -> bool:
    """
    논리 시계 감사

    같은 프로세스의 연속 스텝과 모든 송신→수신 간선에서 lt가 엄격히 증가하는지 확인.

    Args:
        t: 시뮬레이션 Trace

    Returns:
        bool: 위반이 없으면 True
    """
    last: dict[int, int] = {}
    for step in t.steps:
        if step.pid in last and step.lt <= last[step.pid]:
            logger.debug(f"p{step.pid} lt did not increase at rt={step.rt}: {last[step.pid]} -> {step.lt}")
            return False
        last[step.pid] = step.lt

    for record in t.message_log:
        if record.status is DeliveryStatus.DELIVERED and not record.send_lt < record.recv_lt:
            msg = record.msg
            logger.debug(f"{msg.kind.value} p{msg.sender}->p{msg.receiver} received at lt {record.recv_lt} "
                         f"<= send lt {record.send_lt}")
            return False
    return True


def _has_query_phase(op, protocol: Protocol) -> bool:
    return op.is_read or protocol is Protocol.MW_ABD


def find_proposition1_violations(t: Trace) -> list[tuple[int, int]]:
    """
    H^lt|x에서 o1이 o2보다 앞서는데 ts(o1) > ts(o2)인 쌍 검색

    o1은 갱신 단계가 있는 연산(모든 연산), o2는 질의 단계가 있는 연산
    (읽기, MW-ABD는 쓰기 포함)으로 프로토콜 명목상의 단계를 따른다.

    Args:
        t: lt와 ts가 기록된 Trace

    Returns:
        list[tuple[int, int]]: (o1, o2) 연산 ID 쌍
    """
    hlt = build_logical_time_history(complete_history(t.history))
    violations: list[tuple[int, int]] = []
    for x in hlt.registers():
        hx = project_register(hlt, x)
        spans = hx.intervals()
        ops = {op.opid: op for op in hx.operations() if op.ts is not None}

        # 응답 위치 순 prefix 최대 타임스탬프
        finished = sorted((spans[opid][1], opid) for opid in ops)
        res_positions = [res for res, _ in finished]
        prefix: list[int] = []
        best = None
        for _, opid in finished:
            if best is None or ops[opid].ts > ops[best].ts:
                best = opid
            prefix.append(best)

        for opid, op in ops.items():
            if not _has_query_phase(op, t.protocol):
                continue
            count = bisect.bisect_left(res_positions, spans[opid][0])
            if count and ops[prefix[count - 1]].ts > op.ts:
                violations.append((prefix[count - 1], opid))
    return violations


def audit_proposition1(t: Trace) -> bool:
    """o1 <_{H^lt|x} o2 이면 ts(o1) <= ts(o2)"""
    violations = find_proposition1_violations(t)
    if violations:
        logger.debug(f"Timestamp order violated by {len(violations)} pairs, first {violations[0]}")
    return not violations


def audit_round_counts(t: Trace) -> bool:
    """완료된 연산의 라운드 수가 프로토콜 기대값과 정확히 같은지 확인"""
    expected = EXPECTED_ROUNDS[t.protocol]
    for kind, rounds in t.rounds_by_kind().items():
        wrong = [r for r in rounds if r != expected[kind]]
        if wrong:
            logger.debug(f"{len(wrong)} {kind.value} operations used unexpected round counts {sorted(set(wrong))}")
            return False
    return True


def audit_write_timestamps_unique(h: History, per_register: bool = False) -> bool:
    """
    서로 다른 쓰기의 타임스탬프가 모두 다른지 확인

    Args:
        h: 히스토리
        per_register: 레지스터 안에서만 비교 (MW-ABD의 (순번, pid) 타임스탬프는 레지스터별로만 유일)
    """
    writes = [op for op in h.operations() if op.is_write and op.ts is not None]
    stamps = [(op.reg, op.ts) if per_register else op.ts for op in writes]
    return len(stamps) == len(set(stamps))


def audit_replica_monotonicity(t: Trace) -> bool:
    """(프로세스, 레지스터)별 저장 타임스탬프가 감소하지 않는지 확인"""
    stored = {}
    for record in t.store_log:
        key = (record.pid, record.reg)
        if key in stored and record.ts < stored[key]:
            logger.debug(f"p{record.pid} stored ts for {record.reg} went back: {stored[key]} -> {record.ts}")
            return False
        stored[key] = record.ts
    return True


def audit_reliability(t: Trace) -> bool:
    """
    정지 상태로 끝난 실행에서 정상 프로세스로 보낸 메시지가 모두 처리되었는지 확인

    Returns:
        bool: 전달(또는 rid 가드로 폐기)되지 않은 메시지가 없으면 True
    """
    if t.outcome is not RunOutcome.QUIESCENT:
        return False
    correct = t.correct
    handled = (DeliveryStatus.DELIVERED, DeliveryStatus.DISCARDED)
    return all(r.status in handled for r in t.message_log if r.msg.receiver in correct)


def audit_termination(t: Trace) -> bool:
    """정상 프로세스가 호출한 모든 연산이 응답을 받았는지 확인"""
    if t.outcome is not RunOutcome.QUIESCENT:
        return False
    correct = t.correct
    unfinished = [op for op in t.history.pending() if op.proc in correct]
    if unfinished:
        logger.debug(f"{len(unfinished)} operations of correct processes never completed")
    return not unfinished

