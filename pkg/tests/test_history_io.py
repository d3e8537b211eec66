"""
히스토리 파일 / 사이드카 입출력 테스트
"""
import json

import pytest

from dsmlab.core.exceptions import HistoryFormatError
from dsmlab.core.history import HistoryBuilder
from dsmlab.core.types import Timestamp
from dsmlab.services.history_io import (
    dump_history, meta_path, parse_history, read_history, read_message_log, read_meta,
    save_trace, sidecar_path,
)
from dsmlab.simnet import CrashSpec, SimConfig, UniformDelay, WorkloadConfig, run_simulation


def _config(seed: int = 9, **kw) -> SimConfig:
    return SimConfig(
        n=5, seed=seed, delay=UniformDelay(min_ticks=1, max_ticks=12),
        workload=WorkloadConfig(ops_per_process=3, register_count=2), **kw,
    )


def _line(**fields) -> str:
    record = {"kind": "inv", "opid": 1, "proc": 1, "op": "read", "reg": "x", "rt": 0}
    record.update(fields)
    return json.dumps(record)


class TestRoundTrip:
    def test_simulated_history(self):
        h = run_simulation(_config()).history
        assert parse_history(dump_history(h).splitlines()) == h

    def test_pending_write_keeps_timestamp(self):
        t = run_simulation(_config(crashes=[CrashSpec(pid=1, at=3)], mid_op_crash=True))
        parsed = parse_history(dump_history(t.history).splitlines())
        assert parsed == t.history
        assert [op.opid for op in parsed.pending()] == [op.opid for op in t.history.pending()]

    def test_field_names(self):
        b = HistoryBuilder()
        b.write(2, "x", 5, lt=(1, 4), ts=Timestamp(1, 2))
        first = json.loads(dump_history(b.build()).splitlines()[0])
        assert first == {
            "kind": "inv", "opid": 1, "proc": 2, "op": "write", "reg": "x", "val": 5,
            "ret": None, "rt": 0, "lt": 1, "ts": [1, 2],
        }

    def test_save_trace_is_byte_identical(self, tmp_path):
        a = save_trace(run_simulation(_config(seed=4)), str(tmp_path / "a.jsonl"))
        b = save_trace(run_simulation(_config(seed=4)), str(tmp_path / "b.jsonl"))
        for left, right in zip(a, b):
            with open(left, "rb") as fl, open(right, "rb") as fr:
                assert fl.read() == fr.read()
        assert a[1] == sidecar_path(a[0]) and a[1].endswith("a.messages.jsonl")
        assert a[2] == meta_path(a[0])

    def test_sidecar_and_meta(self, tmp_path):
        t = run_simulation(_config())
        out, sidecar, meta = save_trace(t, str(tmp_path / "run.jsonl"))
        records = read_message_log(sidecar)
        assert len(records) == len(t.message_log)
        assert {r.status for r in records} <= {"delivered", "discarded"}
        info = read_meta(meta)
        assert info.protocol == "sc_abd" and info.n == 5 and info.outcome == "quiescent"
        assert read_history(out) == t.history


class TestParseErrors:
    def test_rt_must_not_decrease(self):
        lines = [_line(rt=5), _line(kind="res", ret=0, rt=4)]
        with pytest.raises(HistoryFormatError):
            parse_history(lines)

    def test_response_without_invocation(self):
        with pytest.raises(HistoryFormatError):
            parse_history([_line(kind="res", ret=0)])

    def test_response_must_match_invocation(self):
        with pytest.raises(HistoryFormatError):
            parse_history([_line(), _line(kind="res", reg="y", ret=0, rt=1)])

    def test_write_returns_ok(self):
        lines = [_line(op="write", val=1), _line(kind="res", op="write", val=1, ret=1, rt=1)]
        with pytest.raises(HistoryFormatError):
            parse_history(lines)

    @pytest.mark.parametrize("bad", [
        "{not json",
        _line(extra=1),
        _line(op="write"),
        _line(val=3),
        _line(ret=0),
        _line(proc=0),
    ])
    def test_invalid_records(self, bad):
        with pytest.raises(HistoryFormatError):
            parse_history([bad])

    def test_missing_lt_is_parseable(self):
        h = parse_history([_line(), _line(kind="res", ret=0, rt=1)])
        assert all(e.lt is None for e in h.events)

    def test_unreadable_files(self, tmp_path):
        with pytest.raises(HistoryFormatError):
            read_history(str(tmp_path / "missing.jsonl"))
        binary = tmp_path / "bad.jsonl"
        binary.write_bytes(b"\xff\xfe\x00")
        with pytest.raises(HistoryFormatError):
            read_history(str(binary))
