"""CSV and JSON serialization of result tables through a single ordered sink."""
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, TextIO

from first_passage_lab.models.enums import OutputFormat
from first_passage_lab.models.series import ExactProbability

logger = logging.getLogger(__name__)

# Decimal digits for rendered probabilities that can be overridden through the environment
DEFAULT_PRECISION = int(os.getenv("FPL_PRECISION", "12"))


def render_cell(value: Any, precision: int = DEFAULT_PRECISION) -> str:
    """Render one value as text; exact probabilities become rounded decimals."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, ExactProbability):
        return value.to_decimal(precision)
    if isinstance(value, (list, tuple, set, frozenset)):
        return " ".join(render_cell(v, precision) for v in value)
    return str(value)


@dataclass
class Table:
    name: str
    columns: Sequence[str]
    rows: List[Sequence[Any]] = field(default_factory=list)

    def add(self, *row: Any) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"Table {self.name} has {len(self.columns)} columns, got {len(row)} values")
        self.rows.append(row)


class OutputSink:
    """Collects tables in order and writes them once, as CSV or JSON.

    CSV tables are separated by one blank line. JSON output is a single
    document in which every value, integers included, is a string.
    """

    def __init__(
        self,
        output_format: OutputFormat = OutputFormat.CSV,
        precision: int = DEFAULT_PRECISION,
        command: str = ""
    ):
        self.output_format = output_format
        self.precision = precision
        self.command = command
        self.tables: List[Table] = []

    def table(self, name: str, columns: Sequence[str]) -> Table:
        table = Table(name=name, columns=list(columns))
        self.tables.append(table)
        return table

    def _rendered_rows(self, table: Table) -> List[List[str]]:
        return [[render_cell(v, self.precision) for v in row] for row in table.rows]

    def render(self) -> str:
        if self.output_format == OutputFormat.JSON:
            document: Dict[str, Any] = {
                "command": self.command,
                "tables": [
                    {
                        "name": t.name,
                        "columns": list(t.columns),
                        "rows": [dict(zip(t.columns, row)) for row in self._rendered_rows(t)],
                    }
                    for t in self.tables
                ],
            }
            return json.dumps(document, indent=2) + "\n"

        buffer = io.StringIO()
        for index, t in enumerate(self.tables):
            if index:
                buffer.write("\n")
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(t.columns)
            writer.writerows(self._rendered_rows(t))
        return buffer.getvalue()

    def write(self, output: Optional[str] = None, stream: Optional[TextIO] = None) -> None:
        text = self.render()
        if output:
            with open(output, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            logger.info(f"Wrote {len(self.tables)} table(s) to {output}")
        else:
            (stream or sys.stdout).write(text)
