"""
논리 시계 / 타임스탬프 / quorum 테스트
"""
import numpy as np
import pytest

from dsmlab.core.clock import (
    Ordering, clock_local_step, clock_merge, compare_timestamps, max_faulty, max_pair, quorum_size,
)
from dsmlab.core.exceptions import ConfigError
from dsmlab.core.types import INITIAL_PAIR, Timestamp, TimestampValuePair


def _random_ts(rng):
    return Timestamp(int(rng.integers(0, 20)), int(rng.integers(1, 6)))


def test_compare_timestamps_examples():
    assert compare_timestamps(Timestamp(3, 1), Timestamp(3, 2)) is Ordering.LESS
    assert compare_timestamps(Timestamp(4, 1), Timestamp(3, 9)) is Ordering.GREATER
    assert compare_timestamps(Timestamp(5, 2), Timestamp(5, 2)) is Ordering.EQUAL


def test_timestamp_total_order_laws():
    """반사성, 반대칭성, 추이성, 전체성 (10,000 케이스)"""
    rng = np.random.default_rng(7)
    for _ in range(10_000):
        a, b, c = _random_ts(rng), _random_ts(rng), _random_ts(rng)
        assert compare_timestamps(a, a) is Ordering.EQUAL
        ab, ba = compare_timestamps(a, b), compare_timestamps(b, a)
        assert (ab is Ordering.LESS) == (ba is Ordering.GREATER)
        if ab is Ordering.EQUAL:
            assert a == b
        if a <= b and b <= c:
            assert a <= c
        assert a <= b or b <= a
        # dataclass 비교와 compare_timestamps 일치
        assert (ab is Ordering.LESS) == (a < b)


def test_max_pair():
    low = TimestampValuePair(Timestamp(1, 1), 10)
    high = TimestampValuePair(Timestamp(1, 2), 20)
    assert max_pair(low, high) == high
    assert max_pair(high, low) == high
    assert max_pair(INITIAL_PAIR, low) == low
    # 동률이면 왼쪽 유지
    same = TimestampValuePair(Timestamp(1, 1), 99)
    assert max_pair(low, same) is low


def test_clock_rules():
    assert clock_local_step(0) == 1
    assert clock_merge(3, 7) == 8
    assert clock_merge(9, 2) == 10
    assert clock_merge(4, 4) == 5


def test_quorum_size_values():
    assert quorum_size(1) == 1
    assert quorum_size(3) == 2
    assert quorum_size(4) == 3
    assert quorum_size(5) == 3
    assert max_faulty(5) == 2
    assert max_faulty(4) == 1


def test_quorum_intersection():
    """2 * quorum_size(n) > n (n = 1..100)"""
    for n in range(1, 101):
        assert 2 * quorum_size(n) > n
        assert max_faulty(n) == (n - 1) // 2


def test_quorum_size_rejects_empty_system():
    with pytest.raises(ConfigError):
        quorum_size(0)
