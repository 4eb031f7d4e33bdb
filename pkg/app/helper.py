from __future__ import annotations
import io
import logging
from typing import Dict, Iterable, Optional, Sequence

import numpy as np
import pandas as pd

from report import CheckReport
from scalars import FieldSpec

log = logging.getLogger(__name__)

REPORT_COLUMNS = ["report", "axiom", "pass", "witness"]


def report_frame(reports: Iterable[CheckReport]) -> pd.DataFrame:
    """All rows of all reports in one table."""
    frames = [r.to_frame() for r in reports]
    if not frames:
        return pd.DataFrame(columns=REPORT_COLUMNS)
    return pd.concat(frames, ignore_index=True)

def summary_frame(reports: Iterable[CheckReport]) -> pd.DataFrame:
    rows = [{
        "report": r.title,
        "axioms": len(r.results),
        "failed": len(r.failures),
        "verdict": "PASS" if r.passed else "FAIL",
    } for r in reports]
    return pd.DataFrame(rows, columns=["report", "axioms", "failed", "verdict"])

def matrix_frame(fld: FieldSpec, matrix, row_labels: Optional[Sequence[str]] = None,
                 col_labels: Optional[Sequence[str]] = None) -> pd.DataFrame:
    """Structure constants as canonical strings, rows/columns named by basis labels."""
    m = np.asarray(matrix, dtype=object)
    df = pd.DataFrame(fld.format_array(m))
    if row_labels is not None:
        df.index = list(row_labels)
    if col_labels is not None:
        df.columns = list(col_labels)
    return df

def auto_widths(ws, df: pd.DataFrame, min_w: int = 8, max_w: int = 60, pad: int = 2) -> None:
    # header + longest cell
    for col_idx, col_name in enumerate(df.columns):
        header_w = len(str(col_name))
        data_w = 0 if df.empty else int(df[col_name].astype(str).map(len).max())
        width = max(header_w, data_w) + pad
        ws.set_column(col_idx, col_idx, max(min_w, min(width, max_w)))

def _sheet_name(title: str, taken: Dict[str, int]) -> str:
    # Excel: 31 chars, no []:*?/\
    base = "".join(ch for ch in title if ch not in "[]:*?/\\")[:28] or "report"
    n = taken.get(base, 0)
    taken[base] = n + 1
    return base if n == 0 else f"{base}~{n}"

def report_excel_bytes(reports: Sequence[CheckReport], title: str = "partial-hopf",
                       matrices: Optional[Dict[str, pd.DataFrame]] = None) -> bytes:
    """
    'Summary' sheet plus one sheet per report, then one per entry of ``matrices``.
    Header row bold and frozen, failing rows filled red.
    """
    reports = list(reports)
    bio = io.BytesIO()
    with pd.ExcelWriter(bio, engine="xlsxwriter") as writer:
        book = writer.book
        header_fmt = book.add_format({"bold": True, "align": "left", "border": 1})
        fail_fmt = book.add_format({"bg_color": "#F8CBAD"})

        summary = summary_frame(reports)
        summary.to_excel(writer, sheet_name="Summary", index=False)
        ws = writer.sheets["Summary"]
        for c, name in enumerate(summary.columns):
            ws.write(0, c, name, header_fmt)
        ws.freeze_panes(1, 0)
        auto_widths(ws, summary)

        taken: Dict[str, int] = {"Summary": 1}
        for rep in reports:
            df = rep.to_frame()
            sheet = _sheet_name(rep.title, taken)
            df.to_excel(writer, sheet_name=sheet, index=False)
            ws = writer.sheets[sheet]
            for c, name in enumerate(df.columns):
                ws.write(0, c, name, header_fmt)
            ws.freeze_panes(1, 0)
            auto_widths(ws, df)
            for i, ok in enumerate(df["pass"].tolist(), start=1):  # +1 for header row
                if not ok:
                    ws.set_row(i, None, fail_fmt)

        for name, df in sorted((matrices or {}).items()):
            sheet = _sheet_name(name, taken)
            df.to_excel(writer, sheet_name=sheet)
            ws = writer.sheets[sheet]
            ws.freeze_panes(1, 1)

        try:
            book.set_properties({"title": title})
        except Exception:
            pass

    bio.seek(0)
    log.debug("workbook with %d report sheets and %d matrix sheets", len(reports), len(matrices or {}))
    return bio.getvalue()
