"""
Export Service - point files, table files and sweep files as CSV or JSON,
plus the fixed-width human table printed to stdout.

Data files carry no timestamps: run metadata goes into '#' header lines (CSV)
or a "metadata" object (JSON), so the same run always writes the same bytes.
"""

import csv
import io
import json
import logging
import os
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.models.run_config import OutputFormat

logger = logging.getLogger(__name__)

POINT_FIELDS = ['t', 'g_exact', 'g_approx', 'rpe']
TABLE_FIELDS = ['n', 'm', 'epsilon', 'a_m1', 'c_m1', 'a_0', 'c_0', 'dp', 're']
SWEEP_FIELDS = ['n', 'm', 'dp', 're', 'cond']


@dataclass(frozen=True)
class TableRow:
    n: int
    m: int
    epsilon: float
    a_m1: Optional[float]
    c_m1: float
    a_0: Optional[float]
    c_0: float
    dp: float
    re: Optional[float]


@dataclass(frozen=True)
class SweepRow:
    n: int
    m: int
    dp: float
    re: Optional[float]
    cond: float


def _cell(value: Any) -> str:
    if value is None:
        return ''
    if isinstance(value, float):
        return '{:.17g}'.format(value)
    return str(value)


def _short(value: Any) -> str:
    if value is None:
        return '-'
    if isinstance(value, float):
        return '{:.3e}'.format(value)
    return str(value)


class ExportService:
    """
    Serializes result rows. Rows are dicts keyed by the field names above.
    """

    def to_csv(self, fields: Sequence[str], rows: List[Dict[str, Any]],
               metadata: Optional[Dict[str, Any]] = None) -> str:
        output = io.StringIO()
        for key, value in (metadata or {}).items():
            output.write(f"# {key}={_cell(value)}\n")

        writer = csv.DictWriter(output, fieldnames=list(fields), extrasaction='ignore',
                                lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _cell(row.get(k)) for k in fields})
        return output.getvalue()

    def to_json(self, fields: Sequence[str], rows: List[Dict[str, Any]],
                metadata: Optional[Dict[str, Any]] = None) -> str:
        data = {
            'metadata': metadata or {},
            'rows': [{k: row.get(k) for k in fields} for row in rows],
        }
        return json.dumps(data, indent=2) + "\n"

    def render(self, fmt: OutputFormat, fields: Sequence[str], rows: List[Dict[str, Any]],
               metadata: Optional[Dict[str, Any]] = None) -> str:
        if fmt == OutputFormat.JSON:
            return self.to_json(fields, rows, metadata)
        return self.to_csv(fields, rows, metadata)

    # ─────────────────────────────────────────────────────────────
    # Row builders
    # ─────────────────────────────────────────────────────────────

    @staticmethod
    def point_rows(rows: List[Tuple[float, Optional[float], float, Optional[float]]]) -> List[Dict[str, Any]]:
        return [dict(zip(POINT_FIELDS, row)) for row in rows]

    @staticmethod
    def record_rows(records: Sequence[Any]) -> List[Dict[str, Any]]:
        return [asdict(r) for r in records]

    # ─────────────────────────────────────────────────────────────
    # Human output
    # ─────────────────────────────────────────────────────────────

    def format_table(self, fields: Sequence[str], rows: List[Dict[str, Any]]) -> str:
        """Aligned columns, 4 significant digits."""
        cells = [[_short(row.get(k)) for k in fields] for row in rows]
        widths = [max([len(f)] + [len(c[i]) for c in cells]) for i, f in enumerate(fields)]
        lines = ["  ".join(f.rjust(w) for f, w in zip(fields, widths))]
        lines.extend("  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells)
        return "\n".join(lines)

    def write(self, path: str, text: str):
        folder = os.path.dirname(path)
        if folder:
            os.makedirs(folder, exist_ok=True)
        with open(path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.info(f"Wrote {path}")
