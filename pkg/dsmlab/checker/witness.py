"""
타임스탬프 기반 증인 구성 및 증인 검증
"""
import bisect
from typing import Optional

from dsmlab.core.exceptions import MalformedInstrumentationError, NotSequentialError
from dsmlab.core.history import History, histories_equivalent
from dsmlab.core.types import INITIAL_TIMESTAMP, Timestamp
from dsmlab.checker.legality import is_legal_order, sequential_operations, to_sequential

# validate_witness가 반환하는 조건 이름
SEQUENTIAL = "sequential"
LEGAL = "legal"
EQUIVALENT = "equivalent"
PRECEDENCE = "precedence"


def construct_timestamp_witness(hx: History, ts_map: Optional[dict[int, Timestamp]] = None,
                                by_position: bool = False) -> History:
    """
    단일 레지스터 히스토리의 타임스탬프 증인 구성

    쓰기는 타임스탬프 순, 읽기는 같은 타임스탬프의 쓰기 바로 뒤에 둔다.
    초기 타임스탬프를 읽은 연산은 모든 쓰기보다 앞선다.
    같은 타임스탬프의 읽기끼리는 호출 lt, 다음 프로세스 ID 순.

    Args:
        hx: 완결된 단일 레지스터 히스토리
        ts_map: 연산 ID -> 타임스탬프 (생략하면 연산 기술자의 ts 사용)
        by_position: 같은 타임스탬프의 읽기를 호출 위치 순으로 (실시간 히스토리용)

    Returns:
        History: 순차 히스토리

    Raises:
        MalformedInstrumentationError: 타임스탬프 누락, 중복 쓰기 타임스탬프, 대응 쓰기가 없는 읽기
    """
    inv_lt: dict[int, tuple[int, int, int]] = {}
    for idx, e in enumerate(hx.events):
        if e.is_invocation:
            if by_position or e.lt is None:
                inv_lt[e.opid] = (idx, e.proc, idx)
            else:
                inv_lt[e.opid] = (e.lt, e.proc, idx)

    writes: dict[Timestamp, int] = {}
    reads: dict[Timestamp, list[int]] = {}
    for op in hx.operations():
        ts = ts_map.get(op.opid) if ts_map is not None else op.ts
        if ts is None:
            raise MalformedInstrumentationError(f"operation {op.label()} has no timestamp")
        if op.is_write:
            if ts in writes or ts == INITIAL_TIMESTAMP:
                raise MalformedInstrumentationError(f"write {op.label()} reuses timestamp {ts}")
            writes[ts] = op.opid
        else:
            reads.setdefault(ts, []).append(op.opid)

    for ts in reads:
        if ts != INITIAL_TIMESTAMP and ts not in writes:
            raise MalformedInstrumentationError(f"reads {reads[ts]} carry timestamp {ts} of no write")

    def place_reads(ts: Timestamp) -> list[int]:
        return sorted(reads.get(ts, []), key=lambda opid: inv_lt[opid])

    order = place_reads(INITIAL_TIMESTAMP)
    for ts in sorted(writes):
        order.append(writes[ts])
        order.extend(place_reads(ts))
    return to_sequential(hx, order)


def _precedence_violation(witness: History, source: History) -> bool:
    """원본의 선행 관계(o1 <_H o2)를 증인이 어기면 True"""
    position = {e.opid: i for i, e in enumerate(witness.events) if e.is_invocation}
    spans = source.intervals()
    # 응답 위치 순으로 정렬 후 증인 위치의 prefix 최댓값
    finished = sorted((res, opid) for opid, (_, res) in spans.items() if res is not None)
    res_positions = [res for res, _ in finished]
    prefix_max: list[int] = []
    best = -1
    for _, opid in finished:
        best = max(best, position.get(opid, -1))
        prefix_max.append(best)

    for opid, (inv, _) in spans.items():
        count = bisect.bisect_left(res_positions, inv)
        if count and prefix_max[count - 1] > position.get(opid, -1):
            return True
    return False


def validate_witness(witness: History, source: History, preserve_precedence: bool = False) -> Optional[str]:
    """
    증인 검증: 순차성, 합법성, 동치성, (선택) 선행 관계 보존을 차례로 확인

    Args:
        witness: 검증할 증인
        source: 원본 히스토리
        preserve_precedence: 선형성 증인이면 True

    Returns:
        Optional[str]: 처음 실패한 조건 이름, 모두 만족하면 None
    """
    try:
        ops = sequential_operations(witness)
    except NotSequentialError:
        return SEQUENTIAL
    if is_legal_order(ops) is not None:
        return LEGAL
    if not histories_equivalent(witness, source):
        return EQUIVALENT
    if preserve_precedence and _precedence_violation(witness, source):
        return PRECEDENCE
    return None
