"""
SC-ABD 프로세스 상태 기계

모든 핸들러는 순수 함수: (상태, 자극) -> StepOutput.
쓰기는 갱신 단계 1회, 읽기는 질의 단계 + 갱신 단계(write-back) 2회.
"""
import logging
from dataclasses import replace

from dsmlab.core.clock import clock_local_step, clock_merge, max_pair
from dsmlab.core.exceptions import ProtocolError
from dsmlab.core.history import OpKind
from dsmlab.core.messages import Ack, Query, Response, Update, broadcast
from dsmlab.core.types import OK, ProcessId, RegisterId, Timestamp, TimestampValuePair, Value
from dsmlab.protocol.state import (
    Completion, Invoke, Mutant, Phase, ReplicaState, StepOutput, Stimulus,
)

logger = logging.getLogger(__name__)


def _require_idle(s: ReplicaState) -> None:
    """프로세스당 진행 중인 연산은 최대 1개"""
    if s.phase is not Phase.IDLE:
        raise ProtocolError(f"p{s.pid} invoked an operation while {s.phase.value} (opid={s.opid})")


def invoke_read(s: ReplicaState, r: RegisterId, opid: int | None = None) -> StepOutput:
    """
    READ(r) 호출: 질의 단계 시작

    Args:
        s: 현재 상태 (phase = idle)
        r: 읽을 레지스터
        opid: 시뮬레이터가 부여한 연산 ID (그대로 전달만 함)

    Returns:
        StepOutput: lt/rid 증가, 전체 프로세스로의 Query
    """
    _require_idle(s)
    lt = clock_local_step(s.lt)
    rid = s.rid + 1
    state = replace(
        s, lt=lt, rid=rid, reading=True, rreg=r, responses=frozenset(),
        phase=Phase.QUERYING, opid=opid, op_ts=None,
    )
    outbox = broadcast(lambda j: Query(sender=s.pid, receiver=j, lt=lt, rid=rid, reg=r), s.n)
    return StepOutput(state=state, outbox=outbox, new_round=True)


def invoke_write(s: ReplicaState, r: RegisterId, v: Value, opid: int | None = None) -> StepOutput:
    """
    WRITE(r, v) 호출: 타임스탬프 ((lt, i), v)로 갱신 단계 시작

    Args:
        s: 현재 상태 (phase = idle)
        r: 쓸 레지스터
        v: 쓸 값
        opid: 연산 ID

    Returns:
        StepOutput: 전체 프로세스로의 Update
    """
    _require_idle(s)
    lt = clock_local_step(s.lt)
    rid = s.rid + 1
    tsv = TimestampValuePair(Timestamp(lt, s.pid), v)
    state = replace(
        s, lt=lt, rid=rid, reading=False, rreg=r, responses=frozenset(),
        phase=Phase.UPDATING, opid=opid, op_ts=tsv.ts,
    )
    outbox = broadcast(lambda j: Update(sender=s.pid, receiver=j, lt=lt, rid=rid, reg=r, tsv=tsv), s.n)
    return StepOutput(state=state, outbox=outbox, new_round=True)


def handle_query(s: ReplicaState, m: Query, sender: ProcessId) -> StepOutput:
    """질의 수신: 저장된 쌍으로 응답 (어느 단계에서든)"""
    lt = clock_merge(s.lt, m.lt)
    state = replace(s, lt=lt)
    reply = Response(sender=s.pid, receiver=sender, lt=lt, rid=m.rid, tsv=s.stored(m.reg))
    return StepOutput(state=state, outbox=(reply,))


def _start_update(s: ReplicaState, reg: RegisterId, tsv: TimestampValuePair, lt: int) -> StepOutput:
    """질의 quorum 이후 선택한 쌍으로 갱신 단계 시작"""
    rid = s.rid + 1
    state = replace(s, lt=lt, rid=rid, responses=frozenset(), phase=Phase.UPDATING, op_ts=tsv.ts)
    outbox = broadcast(lambda j: Update(sender=s.pid, receiver=j, lt=lt, rid=rid, reg=reg, tsv=tsv), s.n)
    return StepOutput(state=state, outbox=outbox, new_round=True)


def handle_response(s: ReplicaState, m: Response, sender: ProcessId) -> StepOutput:
    """
    질의 응답 수신

    rid가 다르면 (이미 끝난 단계) 시계 병합 없이 버린다.
    응답 수가 quorum과 정확히 같아지는 순간 최대 타임스탬프 쌍을 골라 갱신 단계로 넘어간다.
    """
    if m.rid != s.rid or s.phase is not Phase.QUERYING:
        logger.debug(f"p{s.pid} discarded stale response rid={m.rid} (current rid={s.rid})")
        return StepOutput(state=s)

    lt = clock_merge(s.lt, m.lt)
    responses = s.responses | {(m.tsv, sender)}
    if len(responses) != s.quorum:
        return StepOutput(state=replace(s, lt=lt, responses=responses))

    tsv, _ = max(responses, key=lambda item: (item[0].ts, item[1]))
    if s.mutant is Mutant.NO_WRITEBACK:
        # 변이: write-back 없이 바로 반환
        state = replace(
            s, lt=lt, rid=s.rid + 1, responses=frozenset(), rval=tsv.val,
            phase=Phase.IDLE, op_ts=tsv.ts,
        )
        return StepOutput(state=state, completion=Completion(s.opid, tsv.val, tsv.ts))

    return _start_update(replace(s, rval=tsv.val), s.rreg, tsv, lt)


def handle_update(s: ReplicaState, m: Update, sender: ProcessId) -> StepOutput:
    """갱신 수신: tvps[r] <- max(tvps[r], tsv'), ack 응답"""
    lt = clock_merge(s.lt, m.lt)
    tvps = dict(s.tvps)
    tvps[m.reg] = max_pair(s.stored(m.reg), m.tsv)
    state = replace(s, lt=lt, tvps=tvps)
    return StepOutput(state=state, outbox=(Ack(sender=s.pid, receiver=sender, lt=lt, rid=m.rid),))


def handle_ack(s: ReplicaState, m: Ack, sender: ProcessId) -> StepOutput:
    """
    ack 수신

    quorum에 정확히 도달하면 읽기는 rval, 쓰기는 OK로 완료.
    """
    if m.rid != s.rid or s.phase is not Phase.UPDATING:
        logger.debug(f"p{s.pid} discarded stale ack rid={m.rid} (current rid={s.rid})")
        return StepOutput(state=s)

    lt = clock_merge(s.lt, m.lt)
    responses = s.responses | {sender}
    if len(responses) != s.quorum:
        return StepOutput(state=replace(s, lt=lt, responses=responses))

    ret = s.rval if s.reading else OK
    state = replace(s, lt=lt, rid=s.rid + 1, responses=frozenset(), phase=Phase.IDLE)
    return StepOutput(state=state, completion=Completion(s.opid, ret, s.op_ts))


def step(s: ReplicaState, stimulus: Stimulus) -> StepOutput:
    """
    자극 하나를 처리하는 SC-ABD 스텝 함수

    Args:
        s: 현재 상태
        stimulus: Invoke 또는 수신 메시지

    Returns:
        StepOutput: 새 상태, 송신 메시지, 완료 여부
    """
    if isinstance(stimulus, Invoke):
        if stimulus.kind is OpKind.READ:
            return invoke_read(s, stimulus.reg, stimulus.opid)
        if stimulus.value is None:
            raise ProtocolError("write invocation without a value")
        return invoke_write(s, stimulus.reg, stimulus.value, stimulus.opid)
    if isinstance(stimulus, Query):
        return handle_query(s, stimulus, stimulus.sender)
    if isinstance(stimulus, Response):
        return handle_response(s, stimulus, stimulus.sender)
    if isinstance(stimulus, Update):
        return handle_update(s, stimulus, stimulus.sender)
    if isinstance(stimulus, Ack):
        return handle_ack(s, stimulus, stimulus.sender)
    raise ProtocolError(f"unknown stimulus {stimulus!r}")
