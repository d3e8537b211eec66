"""
퍼징 캠페인 / 라운드 통계 / 엑셀 보고서 테스트
"""
from openpyxl import load_workbook

from dsmlab.checker import audit_write_timestamps_unique
from dsmlab.core.config import get_settings
from dsmlab.core.history import History
from dsmlab.protocol.state import Mutant, Protocol
from dsmlab.services import (
    ReportExporter, compute_stats, read_history, read_message_log, read_meta, run_campaign, save_trace,
)
from dsmlab.services.campaign import build_fuzz_config, run_one
from dsmlab.simnet import ScriptedOp, SimConfig, WorkloadConfig, run_simulation


def _scripted(protocol: Protocol) -> SimConfig:
    return SimConfig(
        n=5,
        protocol=protocol,
        workload=WorkloadConfig(script={
            1: [ScriptedOp(kind="write", reg="x", value=1), ScriptedOp(kind="read", reg="x")],
            2: [ScriptedOp(kind="read", reg="x"), ScriptedOp(kind="write", reg="y", value=2)],
            3: [ScriptedOp(kind="read", reg="y", at=30)],
        }),
    )


def _stats_for(protocol: Protocol, tmp_path):
    out, sidecar, meta = save_trace(run_simulation(_scripted(protocol)), str(tmp_path / f"{protocol.value}.jsonl"))
    return compute_stats(read_history(out), read_message_log(sidecar), read_meta(meta))


class TestCampaign:
    def test_unmutated_campaign_accepts_everything(self):
        report = run_campaign(30, seed0=100)
        assert report.runs == 30
        assert report.accepted == 30
        assert report.first_violation is None
        assert all(count == 0 for count in report.audit_failures().values())
        assert [r.seed for r in report.results] == list(range(100, 130))

    def test_mw_abd_campaign(self):
        report = run_campaign(10, protocol=Protocol.MW_ABD)
        assert report.acceptance_rate == 1.0
        assert "proposition1" not in report.results[0].audits
        assert report.results[0].audits["round_counts"]
        assert all(count == 0 for count in report.audit_failures().values())

    def test_mw_abd_write_timestamps_audited_per_register(self):
        cfg = build_fuzz_config(9, protocol=Protocol.MW_ABD)
        trace = run_simulation(cfg)
        assert audit_write_timestamps_unique(trace.history, per_register=True)
        result = run_one(9, protocol=Protocol.MW_ABD)
        assert result.audits["write_timestamps_unique"]
        assert result.verdict == "accepted"

    def test_small_quorum_mutant_detected(self):
        report = run_campaign(100, mutant=Mutant.SMALL_QUORUM)
        assert report.count("rejected") > 0
        first = report.first_violation
        assert first is not None
        # 보고된 시드로 재현
        assert run_one(first.seed, mutant=Mutant.SMALL_QUORUM).verdict == first.verdict

    def test_empty_campaign(self):
        report = run_campaign(0)
        assert report.runs == 0
        assert report.acceptance_rate == 1.0
        assert report.first_violation is None

    def test_parallel_matches_sequential(self):
        sequential = run_campaign(6, seed0=7)
        parallel = run_campaign(6, seed0=7, workers=2)
        assert sequential.results == parallel.results

    def test_fuzz_config_respects_fault_bound(self):
        for seed in range(200):
            cfg = build_fuzz_config(seed)
            assert cfg.n in (3, 5, 7)
            assert len(cfg.crashes) <= cfg.f
        assert build_fuzz_config(3, n=7).n == 7


class TestStats:
    def test_sc_abd_row(self, tmp_path):
        stats = _stats_for(Protocol.SC_ABD, tmp_path)
        row = stats.table_row()
        assert row["latency"] == "W:1, R:2"
        assert row["consistency"] == "SC"
        assert row["faults"] == "f=2"
        assert stats.completed == {"write": 2, "read": 3}
        assert stats.histogram == {"write": {1: 2}, "read": {2: 3}}

    def test_mw_abd_row(self, tmp_path):
        row = _stats_for(Protocol.MW_ABD, tmp_path).table_row()
        assert row["latency"] == "W:2, R:2"
        assert row["consistency"] == "LIN"

    def test_without_sidecar(self):
        h = run_simulation(_scripted(Protocol.SC_ABD)).history
        stats = compute_stats(h)
        assert stats.histogram is None
        assert stats.invoked == {"write": 2, "read": 3}
        assert stats.table_row()["latency"] == "W:-, R:-"

    def test_empty_history(self):
        stats = compute_stats(History(), [])
        assert stats.invoked == {}
        assert stats.table_row()["faults"] == "f=?"


class TestExport:
    def test_export_stats(self, tmp_path):
        stats = _stats_for(Protocol.SC_ABD, tmp_path)
        path = ReportExporter().export_stats(stats, str(tmp_path / "out" / "stats.xlsx"))
        wb = load_workbook(path)
        assert wb.sheetnames == ["Rounds", "Summary"]
        summary = wb["Summary"]
        headers = [c.value for c in summary[1]]
        assert summary.cell(row=2, column=headers.index("latency") + 1).value == "W:1, R:2"

    def test_bare_file_name_goes_under_export_dir(self, tmp_path):
        stats = _stats_for(Protocol.SC_ABD, tmp_path)
        exporter = ReportExporter(export_dir=str(tmp_path / "exports"))
        path = exporter.export_stats(stats, "stats.xlsx")
        assert path == str(tmp_path / "exports" / "stats.xlsx")
        assert load_workbook(path).sheetnames == ["Rounds", "Summary"]
        # 디렉토리가 있는 경로는 그대로
        assert exporter.resolve(str(tmp_path / "a.xlsx")) == str(tmp_path / "a.xlsx")

    def test_default_export_dir_from_settings(self):
        assert ReportExporter().export_dir == get_settings().EXPORT_DIR

    def test_export_campaign(self, tmp_path):
        report = run_campaign(3, seed0=1)
        path = ReportExporter().export_campaign(report, str(tmp_path / "campaign.xlsx"))
        ws = load_workbook(path)["Campaign"]
        assert [c.value for c in ws[3]][:4] == ["seed", "n", "operations", "verdict"]
        assert ws.cell(row=4, column=1).value == 1
        assert ws.cell(row=7, column=1).value == "total"
        assert ws.cell(row=7, column=4).value == "3/3"
