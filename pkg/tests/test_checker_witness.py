"""
타임스탬프 증인 구성 및 증인 검증 테스트
"""
import pytest

from dsmlab.checker.logical_time import build_logical_time_history
from dsmlab.checker.witness import (
    EQUIVALENT, LEGAL, PRECEDENCE, SEQUENTIAL, construct_timestamp_witness, validate_witness,
)
from dsmlab.checker.legality import is_legal_sequential, to_sequential
from dsmlab.core.exceptions import MalformedInstrumentationError, NotSequentialError
from dsmlab.core.history import HistoryBuilder
from dsmlab.core.types import INITIAL_TIMESTAMP, Timestamp


def _order(witness) -> list[int]:
    return [e.opid for e in witness.events if e.is_invocation]


class TestConstruction:
    def test_writes_by_timestamp_reads_follow(self):
        b = HistoryBuilder()
        w2 = b.write(2, "x", 2, lt=(3, 4), ts=Timestamp(3, 2))
        w1 = b.write(1, "x", 1, lt=(1, 2), ts=Timestamp(1, 1))
        r = b.read(3, "x", 1, lt=(5, 6), ts=Timestamp(1, 1))
        witness = construct_timestamp_witness(b.build())
        assert _order(witness) == [w1, r, w2]
        assert is_legal_sequential(witness)

    def test_reads_sharing_timestamp_ordered_by_invocation_lt(self):
        b = HistoryBuilder()
        w = b.write(1, "x", 1, lt=(1, 2), ts=Timestamp(1, 1))
        late = b.read(3, "x", 1, lt=(6, 7), ts=Timestamp(1, 1))
        early = b.read(2, "x", 1, lt=(4, 5), ts=Timestamp(1, 1))
        assert _order(construct_timestamp_witness(b.build())) == [w, early, late]

    def test_initial_timestamp_reads_first(self):
        b = HistoryBuilder()
        w = b.write(1, "x", 1, lt=(1, 2), ts=Timestamp(1, 1))
        r = b.read(2, "x", 0, lt=(3, 4), ts=INITIAL_TIMESTAMP)
        assert _order(construct_timestamp_witness(b.build())) == [r, w]

    def test_explicit_timestamp_map(self):
        b = HistoryBuilder()
        w = b.write(1, "x", 1)
        r = b.read(2, "x", 1)
        witness = construct_timestamp_witness(b.build(), ts_map={w: Timestamp(2, 1), r: Timestamp(2, 1)})
        assert _order(witness) == [w, r]

    def test_read_of_unknown_timestamp(self):
        b = HistoryBuilder()
        b.write(1, "x", 1, ts=Timestamp(1, 1))
        b.read(2, "x", 1, ts=Timestamp(9, 9))
        with pytest.raises(MalformedInstrumentationError):
            construct_timestamp_witness(b.build())

    def test_duplicate_write_timestamp(self):
        b = HistoryBuilder()
        b.write(1, "x", 1, ts=Timestamp(1, 1))
        b.write(1, "x", 2, ts=Timestamp(1, 1))
        with pytest.raises(MalformedInstrumentationError):
            construct_timestamp_witness(b.build())

    def test_missing_timestamp(self):
        b = HistoryBuilder()
        b.write(1, "x", 1)
        with pytest.raises(MalformedInstrumentationError):
            construct_timestamp_witness(b.build())


class TestValidation:
    def test_each_condition_checked(self, illegal_history):
        assert validate_witness(illegal_history, illegal_history, preserve_precedence=True) == LEGAL

        b = HistoryBuilder()
        w = b.invoke(1, "write", "x", 1)
        r = b.invoke(2, "read", "x")
        b.respond(w, "OK")
        b.respond(r, 1)
        concurrent = b.build()
        assert validate_witness(concurrent, concurrent) == SEQUENTIAL
        assert validate_witness(to_sequential(concurrent, [w]), concurrent) == EQUIVALENT
        assert validate_witness(to_sequential(concurrent, [w, r]), concurrent, preserve_precedence=True) is None

    def test_precedence_only_for_linearizability(self, stale_read_history):
        witness = to_sequential(stale_read_history, [2, 1])
        assert validate_witness(witness, stale_read_history) is None
        assert validate_witness(witness, stale_read_history, preserve_precedence=True) == PRECEDENCE
        hlt = build_logical_time_history(stale_read_history)
        assert validate_witness(witness, hlt, preserve_precedence=True) is None

    def test_non_sequential_input_rejected_by_legality(self):
        b = HistoryBuilder()
        b.invoke(1, "read", "x")
        with pytest.raises(NotSequentialError):
            is_legal_sequential(b.build())


@pytest.mark.parametrize("ops, legal", [
    ([("w", 1), ("r", 1)], True),
    ([("r", 0)], True),
    ([("w", 1), ("w", 2), ("r", 1)], False),
])
def test_legality_examples(ops, legal):
    b = HistoryBuilder()
    for kind, val in ops:
        if kind == "w":
            b.write(1, "x", val)
        else:
            b.read(1, "x", val)
    assert is_legal_sequential(b.build()) is legal
