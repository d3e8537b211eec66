"""
SC 검사 테스트 (합성 검사기, 전수 오라클, 실시간 선형성, 미완료 연산 처리)
"""
import numpy as np
import pytest

from dsmlab.checker import (
    check_linearizable_realtime, check_sc_bruteforce, check_sc_compositional, complete_history,
)
from dsmlab.checker.legality import is_legal_sequential
from dsmlab.checker.verdict import Outcome
from dsmlab.core.exceptions import MissingLogicalTimeError, NotWellFormedError, OracleCapExceeded
from dsmlab.core.history import HistoryBuilder, histories_equivalent
from dsmlab.core.types import Timestamp
from dsmlab.protocol.state import Mutant
from dsmlab.simnet import SimConfig, UniformDelay, WorkloadConfig, run_simulation
from dsmlab.simnet.schedules import partition_schedule


def _small_run(seed: int, mutant: Mutant = Mutant.NONE):
    rng = np.random.default_rng(seed)
    delay = partition_schedule(3, rng) if mutant is Mutant.SMALL_QUORUM else UniformDelay(min_ticks=1, max_ticks=15)
    cfg = SimConfig(
        n=3, seed=seed, mutant=mutant, delay=delay,
        workload=WorkloadConfig(ops_per_process=3, read_fraction=0.5, register_count=2, think_time=3),
    )
    return run_simulation(cfg)


class TestDiscrimination:
    def test_illegal_history_rejected_by_both(self, illegal_history):
        compositional = check_sc_compositional(illegal_history)
        assert compositional.outcome is Outcome.REJECTED
        assert compositional.violation.register == "x"
        assert check_sc_bruteforce(illegal_history).outcome is Outcome.REJECTED

    def test_stale_read_is_sc_but_not_linearizable(self, stale_read_history):
        verdict = check_sc_compositional(stale_read_history)
        assert verdict.accepted
        assert [p.method for p in verdict.parts] == ["timestamp"]
        assert check_sc_bruteforce(stale_read_history).accepted
        assert check_linearizable_realtime(stale_read_history).outcome is Outcome.REJECTED

    def test_cross_register_history(self, cross_register_history):
        assert check_sc_bruteforce(cross_register_history).outcome is Outcome.REJECTED
        with pytest.raises(MissingLogicalTimeError):
            check_sc_compositional(cross_register_history)

    def test_oracle_examples(self):
        b = HistoryBuilder()
        b.write(1, "x", 3)
        b.read(1, "x", 3)
        b.read(1, "y", 0)
        verdict = check_sc_bruteforce(b.build())
        assert verdict.accepted
        assert is_legal_sequential(verdict.witness)

        b = HistoryBuilder()
        b.read(1, "x", 1)
        assert check_sc_bruteforce(b.build()).outcome is Outcome.REJECTED

    def test_oracle_cap(self):
        b = HistoryBuilder()
        for i in range(11):
            b.write(1, "x", i)
        with pytest.raises(OracleCapExceeded):
            check_sc_bruteforce(b.build())
        assert check_sc_bruteforce(b.build(), max_ops=11).accepted


class TestPreconditions:
    def test_pending_history_rejected(self):
        b = HistoryBuilder()
        b.invoke(1, "read", "x", lt=1)
        h = b.build()
        with pytest.raises(NotWellFormedError):
            check_sc_compositional(h)
        with pytest.raises(NotWellFormedError):
            check_sc_bruteforce(h)

    def test_completion_keeps_started_writes(self):
        b = HistoryBuilder()
        w = b.invoke(1, "write", "x", 7, lt=1, ts=Timestamp(1, 1))
        r = b.invoke(2, "read", "x", lt=1)
        w2 = b.invoke(3, "write", "x", 8, lt=1)
        h = complete_history(b.build())
        assert h.is_complete()
        ops = {op.opid: op for op in h.operations()}
        # 갱신 단계를 시작한(ts가 있는) 쓰기만 남음
        assert set(ops) == {w}
        assert r not in ops and w2 not in ops
        assert ops[w].ret == "OK"
        assert h.events[-1].lt == 2


class TestComposition:
    @pytest.mark.parametrize("mutant", [Mutant.NONE, Mutant.SMALL_QUORUM])
    def test_composition_sound_against_oracle(self, mutant):
        """합성 검사가 수락하면 오라클도 수락"""
        for seed in range(60):
            t = _small_run(seed, mutant)
            verdict = check_sc_compositional(t.history)
            if verdict.accepted:
                assert check_sc_bruteforce(t.history).accepted
                assert is_legal_sequential(verdict.witness)
                assert histories_equivalent(verdict.witness, t.history)

    def test_unmutated_runs_take_fast_path(self):
        for seed in range(30):
            verdict = check_sc_compositional(_small_run(seed).history)
            assert verdict.accepted
            assert all(p.method == "timestamp" for p in verdict.parts)
            assert verdict.method == "compositional"
