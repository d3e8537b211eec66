"""
MW-ABD 비교 기준 프로토콜

읽기는 SC-ABD와 같고, 쓰기는 질의 단계에서 quorum 최대 타임스탬프 t를 구한 뒤
(t.seq + 1, self)로 갱신 단계를 수행한다. 타임스탬프 첫 성분은 시퀀스 번호.
Lamport 시계는 계측용으로 SC-ABD와 같은 규칙으로 유지한다.
"""
from dataclasses import replace

from dsmlab.core.clock import clock_local_step, clock_merge
from dsmlab.core.exceptions import ProtocolError
from dsmlab.core.history import OpKind
from dsmlab.core.messages import Ack, Query, Response, Update, broadcast
from dsmlab.core.types import RegisterId, Timestamp, TimestampValuePair, Value
from dsmlab.protocol import sc_abd
from dsmlab.protocol.state import Invoke, MwAbdState, Phase, StepOutput, Stimulus


def _invoke_write(s: MwAbdState, r: RegisterId, v: Value, opid: int | None) -> StepOutput:
    """쓰기 호출: 먼저 질의 단계"""
    if s.phase is not Phase.IDLE:
        raise ProtocolError(f"p{s.pid} invoked an operation while {s.phase.value} (opid={s.opid})")
    lt = clock_local_step(s.lt)
    rid = s.rid + 1
    state = replace(
        s, lt=lt, rid=rid, reading=False, rreg=r, wval=v, responses=frozenset(),
        phase=Phase.QUERYING, opid=opid, op_ts=None,
    )
    outbox = broadcast(lambda j: Query(sender=s.pid, receiver=j, lt=lt, rid=rid, reg=r), s.n)
    return StepOutput(state=state, outbox=outbox, new_round=True)


def _handle_write_response(s: MwAbdState, m: Response) -> StepOutput:
    """쓰기의 질의 응답: quorum 도달 시 (max.seq + 1, self)로 갱신"""
    if m.rid != s.rid or s.phase is not Phase.QUERYING:
        return StepOutput(state=s)

    lt = clock_merge(s.lt, m.lt)
    responses = s.responses | {(m.tsv, m.sender)}
    if len(responses) != s.quorum:
        return StepOutput(state=replace(s, lt=lt, responses=responses))

    highest = max(tsv.ts for tsv, _ in responses)
    tsv = TimestampValuePair(Timestamp(highest.lt + 1, s.pid), s.wval)
    rid = s.rid + 1
    state = replace(s, lt=lt, rid=rid, responses=frozenset(), phase=Phase.UPDATING, op_ts=tsv.ts)
    outbox = broadcast(lambda j: Update(sender=s.pid, receiver=j, lt=lt, rid=rid, reg=s.rreg, tsv=tsv), s.n)
    return StepOutput(state=state, outbox=outbox, new_round=True)


def mwabd_step(s: MwAbdState, stimulus: Stimulus) -> StepOutput:
    """
    자극 하나를 처리하는 MW-ABD 스텝 함수

    Args:
        s: 현재 상태
        stimulus: Invoke 또는 수신 메시지

    Returns:
        StepOutput: 새 상태, 송신 메시지, 완료 여부
    """
    if isinstance(stimulus, Invoke):
        if stimulus.kind is OpKind.READ:
            return sc_abd.invoke_read(s, stimulus.reg, stimulus.opid)
        if stimulus.value is None:
            raise ProtocolError("write invocation without a value")
        return _invoke_write(s, stimulus.reg, stimulus.value, stimulus.opid)
    if isinstance(stimulus, Response):
        if s.reading:
            return sc_abd.handle_response(s, stimulus, stimulus.sender)
        return _handle_write_response(s, stimulus)
    if isinstance(stimulus, (Query, Update, Ack)):
        # 복제본 동작과 ack 처리는 SC-ABD와 동일
        return sc_abd.step(s, stimulus)
    raise ProtocolError(f"unknown stimulus {stimulus!r}")
