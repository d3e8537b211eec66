"""
엑셀 보고서 생성 (라운드 통계, 퍼징 캠페인)
"""
import logging
import os
from typing import Optional

from openpyxl import Workbook
from openpyxl.styles import Alignment, Border, Font, PatternFill, Side

from dsmlab.core.config import get_settings
from dsmlab.services.campaign import CampaignReport
from dsmlab.services.stats import RoundStats

logger = logging.getLogger(__name__)

HEADER_FILL = PatternFill(start_color="4472C4", end_color="4472C4", fill_type="solid")
TOTAL_FILL = PatternFill(start_color="E7E6E6", end_color="E7E6E6", fill_type="solid")
FAIL_FILL = PatternFill(start_color="FFE699", end_color="FFE699", fill_type="solid")


class ReportExporter:
    """통계/캠페인 엑셀 생성 클래스"""

    def __init__(self, export_dir: Optional[str] = None):
        self.export_dir = export_dir if export_dir is not None else get_settings().EXPORT_DIR

    def resolve(self, path: str) -> str:
        """디렉토리 없는 파일 이름은 export_dir 아래로"""
        if os.path.dirname(path):
            return path
        return os.path.join(self.export_dir, path)

    def _get_border(self) -> Border:
        """테두리 스타일"""
        thin = Side(border_style="thin", color="000000")
        return Border(left=thin, right=thin, top=thin, bottom=thin)

    def _title(self, ws, text: str, span: str) -> None:
        ws.merge_cells(span)
        cell = ws["A1"]
        cell.value = text
        cell.font = Font(size=16, bold=True)
        cell.alignment = Alignment(horizontal="center", vertical="center")
        ws.row_dimensions[1].height = 30

    def _header(self, ws, row: int, headers: list[str]) -> None:
        for col, header in enumerate(headers, start=1):
            cell = ws.cell(row=row, column=col)
            cell.value = header
            cell.font = Font(bold=True, color="FFFFFF")
            cell.fill = HEADER_FILL
            cell.alignment = Alignment(horizontal="center", vertical="center")
            cell.border = self._get_border()
        ws.row_dimensions[row].height = 25

    def _row(self, ws, row: int, values: list, fill: PatternFill | None = None) -> None:
        for col, value in enumerate(values, start=1):
            cell = ws.cell(row=row, column=col)
            cell.value = value
            cell.alignment = Alignment(horizontal="center", vertical="center")
            cell.border = self._get_border()
            if fill is not None:
                cell.fill = fill

    def _save(self, wb: Workbook, path: str) -> str:
        path = self.resolve(path)
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        wb.save(path)
        logger.info(f"Report exported: {path}")
        return path

    def export_stats(self, stats: RoundStats, path: str) -> str:
        """
        라운드 통계 보고서 생성 (히스토그램 + 프로토콜 비교 행)

        Args:
            stats: 라운드 통계
            path: 저장할 .xlsx 경로 (파일 이름만 주면 export_dir 아래)

        Returns:
            str: 생성된 파일 경로
        """
        wb = Workbook()
        ws = wb.active
        ws.title = "Rounds"
        self._title(ws, f"[{stats.protocol or 'unknown'}] rounds per operation", "A1:D1")

        header_row = 3
        self._header(ws, header_row, ["op", "rounds", "count", "completed"])
        row = header_row + 1
        histogram = stats.histogram or {}
        for kind in sorted(set(stats.invoked) | set(histogram)):
            buckets = histogram.get(kind) or {None: None}
            for rounds, count in sorted(buckets.items(), key=lambda item: (item[0] is None, item[0] or 0)):
                self._row(ws, row, [kind, rounds, count, stats.completed.get(kind, 0)])
                row += 1

        # 비교표
        table = wb.create_sheet("Summary")
        table_row = stats.table_row()
        self._header(table, 1, list(table_row.keys()))
        self._row(table, 2, list(table_row.values()), fill=TOTAL_FILL)

        for sheet in (ws, table):
            for col in "ABCDE":
                sheet.column_dimensions[col].width = 16
        return self._save(wb, path)

    def export_campaign(self, report: CampaignReport, path: str) -> str:
        """
        퍼징 캠페인 보고서 생성 (실행별 행 + 합계 행)

        Args:
            report: 캠페인 결과
            path: 저장할 .xlsx 경로 (파일 이름만 주면 export_dir 아래)

        Returns:
            str: 생성된 파일 경로
        """
        wb = Workbook()
        ws = wb.active
        ws.title = "Campaign"
        audit_names = sorted({name for r in report.results for name in r.audits})
        headers = ["seed", "n", "operations", "verdict"] + audit_names
        last_col = chr(ord("A") + len(headers) - 1)
        self._title(ws, f"[{report.protocol.value}/{report.mutant.value}] fuzz campaign", f"A1:{last_col}1")

        header_row = 3
        self._header(ws, header_row, headers)
        row = header_row + 1
        for r in report.results:
            values = [r.seed, r.n, r.operations, r.verdict]
            values += ["OK" if r.audits.get(name, True) else "FAIL" for name in audit_names]
            self._row(ws, row, values, fill=FAIL_FILL if r.violated else None)
            row += 1

        # 합계 행
        failures = report.audit_failures()
        totals = ["total", "", sum(r.operations for r in report.results), f"{report.accepted}/{report.runs}"]
        totals += [failures.get(name, 0) for name in audit_names]
        self._row(ws, row, totals, fill=TOTAL_FILL)
        ws.cell(row=row, column=1).font = Font(bold=True)

        for idx in range(len(headers)):
            ws.column_dimensions[chr(ord("A") + idx)].width = 14 if idx < 4 else 22
        return self._save(wb, path)
