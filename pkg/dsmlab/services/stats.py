"""
연산당 통신 라운드 통계
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from dsmlab.core.history import History, OpKind
from dsmlab.schemas.history import MessageLogRecord, RunMeta

logger = logging.getLogger(__name__)

PHASE_MESSAGES = ("query", "update")
CONSISTENCY = {"sc_abd": "SC", "mw_abd": "LIN"}


def operation_rounds(h: History, messages: list[MessageLogRecord]) -> dict[int, int]:
    """
    완료된 연산별 라운드 수

    연산의 호출~응답 tick 사이에 해당 프로세스가 보낸 질의/갱신 메시지의 서로 다른 rid 개수.

    Args:
        h: 히스토리
        messages: 메시지 로그 사이드카 레코드

    Returns:
        dict[int, int]: 연산 ID -> 라운드 수
    """
    sent: dict[int, list[MessageLogRecord]] = {}
    for m in messages:
        if m.kind in PHASE_MESSAGES:
            sent.setdefault(m.sender, []).append(m)

    rounds = {}
    for opid, (inv, res) in h.intervals().items():
        if res is None:
            continue
        inv_event, res_event = h.events[inv], h.events[res]
        rids = {
            m.rid for m in sent.get(inv_event.proc, [])
            if inv_event.rt <= m.send_rt <= res_event.rt
        }
        rounds[opid] = len(rids)
    return rounds


def summarize_rounds(values: list[int]) -> str:
    """라운드 수 목록 -> '1' 또는 '1-2' ('-'는 없음)"""
    if not values:
        return "-"
    low, high = min(values), max(values)
    return str(low) if low == high else f"{low}-{high}"


@dataclass
class RoundStats:
    """라운드 통계"""
    protocol: Optional[str]
    n: Optional[int]
    invoked: dict[str, int] = field(default_factory=dict)
    completed: dict[str, int] = field(default_factory=dict)
    histogram: Optional[dict[str, dict[int, int]]] = None  # 사이드카가 없으면 None

    def rounds_of(self, kind: str) -> list[int]:
        if not self.histogram:
            return []
        return [r for r, c in sorted(self.histogram.get(kind, {}).items()) for _ in range(c)]

    def table_row(self) -> dict[str, str]:
        """프로토콜 비교표 형식의 한 행"""
        write = summarize_rounds(self.rounds_of(OpKind.WRITE.value))
        read = summarize_rounds(self.rounds_of(OpKind.READ.value))
        return {
            "protocol": self.protocol or "unknown",
            "consistency": CONSISTENCY.get(self.protocol or "", "?"),
            "multi_writer": "yes",
            "latency": f"W:{write}, R:{read}",
            "faults": f"f={(self.n - 1) // 2}" if self.n else "f=?",
        }


def compute_stats(h: History, messages: Optional[list[MessageLogRecord]] = None,
                  meta: Optional[RunMeta] = None) -> RoundStats:
    """
    히스토리(와 사이드카)로 통계 계산

    Args:
        h: 히스토리
        messages: 메시지 로그 (None이면 개수 통계만)
        meta: 실행 메타 (프로토콜, n)

    Returns:
        RoundStats: 통계
    """
    procs = h.processes()
    stats = RoundStats(
        protocol=meta.protocol if meta else None,
        n=meta.n if meta else (max(procs) if procs else None),
    )
    spans = h.intervals()
    ops = h.operations()
    stats.invoked = dict(Counter(op.kind.value for op in ops))
    stats.completed = dict(Counter(op.kind.value for op in ops if spans[op.opid][1] is not None))

    if messages is None:
        logger.warning("No message log sidecar; round statistics limited to operation counts")
        return stats

    rounds = operation_rounds(h, messages)
    kinds = {op.opid: op.kind.value for op in ops}
    histogram: dict[str, dict[int, int]] = {}
    for opid, r in rounds.items():
        bucket = histogram.setdefault(kinds[opid], {})
        bucket[r] = bucket.get(r, 0) + 1
    stats.histogram = histogram
    return stats
