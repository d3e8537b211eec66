"""
Trace 감사 테스트 (정상 실행 + 결함 주입)
"""
import pytest

from dsmlab.checker import (
    audit_logical_clocks, audit_proposition1, audit_reliability, audit_replica_monotonicity,
    audit_round_counts, audit_termination, audit_write_timestamps_unique,
)
from dsmlab.core.history import History, HistoryBuilder
from dsmlab.core.types import Timestamp
from dsmlab.protocol.state import Mutant, Protocol
from dsmlab.simnet import ScriptedOp, SimConfig, UniformDelay, WorkloadConfig, run_simulation
from dsmlab.simnet.trace import DeliveryStatus, RunOutcome, StoreRecord, Trace


@pytest.fixture
def trace():
    cfg = SimConfig(
        n=3, seed=5, delay=UniformDelay(min_ticks=1, max_ticks=8),
        workload=WorkloadConfig(ops_per_process=3, register_count=2, read_fraction=0.5),
    )
    return run_simulation(cfg)


def test_unmutated_trace_passes(trace):
    assert audit_logical_clocks(trace)
    assert audit_proposition1(trace)
    assert audit_round_counts(trace)
    assert audit_replica_monotonicity(trace)
    assert audit_reliability(trace)
    assert audit_termination(trace)
    assert audit_write_timestamps_unique(trace.history)


def test_empty_trace_is_vacuous():
    empty = Trace(protocol=Protocol.SC_ABD, n=3, seed=0, mutant=Mutant.NONE,
                  outcome=RunOutcome.QUIESCENT, history=History())
    assert audit_logical_clocks(empty)
    assert audit_proposition1(empty)
    assert audit_round_counts(empty)
    assert audit_termination(empty)


def test_lowered_receive_lt_fails_clock_audit(trace):
    record = next(r for r in trace.message_log if r.status is DeliveryStatus.DELIVERED)
    record.recv_lt = record.send_lt
    assert not audit_logical_clocks(trace)


def test_step_lt_regression_fails_clock_audit(trace):
    first = trace.steps[0]
    trace.steps.insert(1, first)
    assert not audit_logical_clocks(trace)


def test_single_operation_trace():
    cfg = SimConfig(n=3, workload=WorkloadConfig(script={2: [ScriptedOp(kind="read", reg="x")]}))
    t = run_simulation(cfg)
    assert len(t.history.operations()) == 1
    assert audit_proposition1(t)


def test_undelivered_message_fails_reliability(trace):
    record = next(r for r in trace.message_log if r.msg.receiver in trace.correct)
    record.status = DeliveryStatus.IN_FLIGHT
    assert not audit_reliability(trace)


def test_store_regression_fails_monotonicity(trace):
    rt = trace.final_tick
    trace.store_log.append(StoreRecord(1, rt + 1, "z", Timestamp(5, 2)))
    trace.store_log.append(StoreRecord(1, rt + 2, "z", Timestamp(5, 1)))
    assert not audit_replica_monotonicity(trace)


def test_extra_round_fails_round_audit(trace):
    opid = next(op.opid for op in trace.history.operations())
    trace.rounds[opid] += 1
    assert not audit_round_counts(trace)


def test_duplicate_write_timestamps():
    b = HistoryBuilder()
    b.write(1, "x", 1, ts=Timestamp(1, 1))
    b.write(2, "y", 2, ts=Timestamp(1, 1))
    assert not audit_write_timestamps_unique(b.build())


def test_write_timestamps_unique_per_register():
    # MW-ABD: (순번, pid) 타임스탬프는 레지스터가 다르면 겹칠 수 있음
    b = HistoryBuilder()
    b.write(2, "x2", 5, ts=Timestamp(1, 2))
    b.write(2, "x0", 7, ts=Timestamp(1, 2))
    h = b.build()
    assert not audit_write_timestamps_unique(h)
    assert audit_write_timestamps_unique(h, per_register=True)

    b.write(1, "x0", 8, ts=Timestamp(1, 2))
    assert not audit_write_timestamps_unique(b.build(), per_register=True)


def test_horizon_fails_termination():
    t = run_simulation(SimConfig(n=3, max_ticks=1))
    assert t.outcome is RunOutcome.HORIZON_EXHAUSTED
    assert not audit_termination(t)
    assert not audit_reliability(t)
