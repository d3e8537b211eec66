"""
논리 시계, 타임스탬프 비교, quorum 계산
"""
from enum import Enum

from dsmlab.core.exceptions import ConfigError
from dsmlab.core.types import LogicalTime, Timestamp, TimestampValuePair


class Ordering(Enum):
    """비교 결과"""
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


def compare_timestamps(a: Timestamp, b: Timestamp) -> Ordering:
    """
    타임스탬프 사전식 비교 (lt 우선, pid로 동률 해소)

    Args:
        a: 왼쪽 타임스탬프
        b: 오른쪽 타임스탬프

    Returns:
        Ordering: LESS / EQUAL / GREATER
    """
    if (a.lt, a.pid) < (b.lt, b.pid):
        return Ordering.LESS
    if (a.lt, a.pid) == (b.lt, b.pid):
        return Ordering.EQUAL
    return Ordering.GREATER


def max_pair(a: TimestampValuePair, b: TimestampValuePair) -> TimestampValuePair:
    """타임스탬프가 큰 쌍 반환 (동률이면 a 유지)"""
    return b if b.ts > a.ts else a


def clock_local_step(lt: LogicalTime) -> LogicalTime:
    """로컬 이벤트: lt + 1"""
    return lt + 1


def clock_merge(lt: LogicalTime, lt_msg: LogicalTime) -> LogicalTime:
    """메시지 수신: max(lt, lt') + 1"""
    return max(lt, lt_msg) + 1


def quorum_size(n: int) -> int:
    """
    과반수 quorum 크기

    Args:
        n: 전체 프로세스 수 (>= 1)

    Returns:
        int: floor(n/2) + 1
    """
    if n < 1:
        raise ConfigError(f"quorum_size requires n >= 1, got {n}")
    return n // 2 + 1


def max_faulty(n: int) -> int:
    """허용 가능한 최대 장애 프로세스 수 f = n - quorum_size(n)"""
    return n - quorum_size(n)
