"""
Verification report tables (plain text, CSV, JSON) and an optional PDF rendering.
"""

import json
import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional
from xml.sax.saxutils import escape

import pandas as pd
from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER, TA_LEFT
from reportlab.lib.pagesizes import landscape, letter
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet
from reportlab.lib.units import inch
from reportlab.platypus import BaseDocTemplate, Frame, PageTemplate, Paragraph, Spacer, Table, TableStyle

from src.analysis.verification import CheckResult
from src.core.config import EXIT_FAIL, EXIT_OK, STATUS_FAIL, STATUS_PASS, STATUS_SKIPPED
from src.core.errors import ComponentGraphError
from src.reports.serialization import write_atomic

logger = logging.getLogger(__name__)

# Columns written to the deterministic report files; wall times only go to the PDF and the log
TABLE_COLUMNS = ['check', 'q', 'n', 'status', 'detail']


class ReportGenerationError(ComponentGraphError):
    """Base exception for report generation errors."""
    pass


class ReportRenderingError(ReportGenerationError):
    """Exception for PDF rendering errors."""
    pass


@dataclass
class VerificationReport:
    """Results of a sweep, one entry per (check, q, n), in run order."""

    results: List[CheckResult] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        out = {STATUS_PASS: 0, STATUS_FAIL: 0, STATUS_SKIPPED: 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if any(r.failed for r in self.results) else EXIT_OK

    def to_frame(self, with_elapsed: bool = False) -> pd.DataFrame:
        records = [r.to_record() for r in self.results]
        columns = TABLE_COLUMNS + ['witness'] + (['elapsed'] if with_elapsed else [])
        if not records:
            return pd.DataFrame(columns=columns)
        return pd.DataFrame(records)[columns]

    def summary_line(self) -> str:
        c = self.counts()
        return (f"{len(self.results)} checks: {c[STATUS_PASS]} PASS, "
                f"{c[STATUS_FAIL]} FAIL, {c[STATUS_SKIPPED]} SKIPPED")

    def to_text(self) -> str:
        df = self.to_frame()[TABLE_COLUMNS]
        body = df.to_string(index=False) if len(df) else '(empty grid)'
        return body + '\n\n' + self.summary_line() + '\n'

    def to_csv(self) -> str:
        df = self.to_frame()
        df['witness'] = [json.dumps(w, sort_keys=True) for w in df['witness']]
        return df.to_csv(index=False, lineterminator='\n')

    def to_json(self) -> str:
        data = {
            'summary': self.counts(),
            'results': [{k: v for k, v in r.to_record().items() if k != 'elapsed'} for r in self.results],
        }
        return json.dumps(data, indent=2, sort_keys=True) + '\n'


class ReportGenerator:
    """Writes a VerificationReport into an output directory."""

    def __init__(self, output_dir: Optional[str] = None):
        self.output_dir = Path(output_dir or './outputs')
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.styles = self._init_styles()
        self._lock = threading.Lock()

    def _init_styles(self) -> Dict[str, ParagraphStyle]:
        styles = getSampleStyleSheet()
        styles.add(ParagraphStyle(name='ReportTitle', parent=styles['h1'], alignment=TA_CENTER,
                                  fontSize=16, spaceAfter=5, textColor=colors.darkblue))
        styles.add(ParagraphStyle(name='ReportSubTitle', parent=styles['h2'], alignment=TA_CENTER,
                                  fontSize=11, spaceAfter=10, textColor=colors.dimgray))
        styles.add(ParagraphStyle(name='TableCellLeft', parent=styles['Normal'], alignment=TA_LEFT, fontSize=7))
        styles.add(ParagraphStyle(name='Footer', parent=styles['Normal'], alignment=TA_CENTER,
                                  fontSize=7, textColor=colors.grey))

        self.table_style_std = TableStyle([
            ('GRID', (0, 0), (-1, -1), 0.5, colors.lightgrey),
            ('BOX', (0, 0), (-1, -1), 1, colors.darkgrey),
            ('BACKGROUND', (0, 0), (-1, 0), colors.darkslategray),
            ('TEXTCOLOR', (0, 0), (-1, 0), colors.white),
            ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),
            ('FONTSIZE', (0, 0), (-1, -1), 7),
            ('VALIGN', (0, 0), (-1, -1), 'TOP'),
            ('ALIGN', (1, 1), (2, -1), 'RIGHT'),
        ])
        return styles

    def write_tables(self, report: VerificationReport) -> Dict[str, str]:
        """report.txt, report.csv and report.json; returns format -> path."""
        paths = {}
        for fmt, text in (('txt', report.to_text()), ('csv', report.to_csv()), ('json', report.to_json())):
            paths[fmt] = str(write_atomic(self.output_dir / f'report.{fmt}', text))
        logger.info(f"Wrote report tables to {self.output_dir}")
        return paths

    # --- PDF ---

    def _footer(self, canvas, doc):
        canvas.saveState()
        footer = Paragraph(f"Page {doc.page} | Component graph verification", self.styles['Footer'])
        w, h = footer.wrap(doc.width, doc.bottomMargin)
        footer.drawOn(canvas, doc.leftMargin, h - 10)
        canvas.restoreState()

    def _status_style(self, report: VerificationReport) -> TableStyle:
        style = TableStyle(self.table_style_std.getCommands())
        shade = {STATUS_FAIL: colors.mistyrose, STATUS_SKIPPED: colors.lightyellow}
        for row, r in enumerate(report.results, start=1):
            style.add('BACKGROUND', (0, row), (-1, row), shade.get(r.status, colors.white))
        return style

    def write_pdf(self, report: VerificationReport, title: str = 'Verification report') -> str:
        output_path = self.output_dir / 'report.pdf'
        try:
            doc = BaseDocTemplate(str(output_path), pagesize=landscape(letter),
                                  leftMargin=0.5 * inch, rightMargin=0.5 * inch,
                                  topMargin=0.6 * inch, bottomMargin=0.8 * inch)
            frame = Frame(doc.leftMargin, doc.bottomMargin, doc.width, doc.height, id='normal')
            doc.addPageTemplates([PageTemplate(id='main', frames=frame, onPageEnd=self._footer)])

            cell = self.styles['TableCellLeft']
            rows = [['Check', 'q', 'n', 'Status', 'Time (s)', 'Detail']]
            for r in report.results:
                rows.append([r.check_id, str(r.q), str(r.n), r.status,
                             f"{r.elapsed:.2f}", Paragraph(escape(r.detail), cell)])
            table = Table(rows, colWidths=[1.1 * inch, 0.35 * inch, 0.35 * inch, 0.7 * inch,
                                           0.6 * inch, doc.width - 3.1 * inch], repeatRows=1)
            table.setStyle(self._status_style(report))

            story = [Paragraph(title, self.styles['ReportTitle']),
                     Paragraph(report.summary_line(), self.styles['ReportSubTitle']),
                     Spacer(1, 0.1 * inch), table]
            with self._lock:
                doc.build(story)
            logger.info(f"Saved report PDF to {output_path}")
            return str(output_path)
        except Exception as e:
            logger.exception(f"PDF build failed: {e}")
            if output_path.exists():
                try:
                    output_path.unlink()
                except OSError:
                    logger.error(f"Could not remove broken PDF: {output_path}")
            raise ReportRenderingError(f"Failed building report PDF: {e}") from e
