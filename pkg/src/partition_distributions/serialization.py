"""
Rendering of command results as json, csv or an aligned text table.

Exact values are always written as "p/q". Floating-point sampler statistics
are written with 12 significant digits. Output is deterministic: no locale,
no timestamps, "\n" line endings.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .exactnum import format_rational
from .partitions import MultiplicityVector, Partition, PartitionVector

FLOAT_DIGITS = 12


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    PRETTY = "pretty"


@dataclass
class CommandResult:
    """
    Output of one CLI command.

    ``rows`` feed csv and pretty output; json uses ``payload`` (an object or a
    list) when given and otherwise one object per row plus ``summary``.
    """

    command: str
    header: Tuple[str, ...] = ()
    rows: List[Tuple[Any, ...]] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)
    payload: Optional[Union[Dict[str, Any], List[Any]]] = None
    ok: bool = True


def format_float(value: float) -> str:
    if math.isnan(value) or math.isinf(value):
        return str(value)
    return f"{value:.{FLOAT_DIGITS}g}"


def _ints(value: Any) -> Optional[Sequence[int]]:
    if isinstance(value, Partition):
        return value.parts
    if isinstance(value, MultiplicityVector):
        return value.m
    if isinstance(value, PartitionVector):
        return value.entries
    if isinstance(value, tuple) and all(isinstance(v, int) for v in value):
        return value
    return None


def format_cell(value: Any, fmt: OutputFormat) -> str:
    """Text of one table cell."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        return format_float(value)
    ints = _ints(value)
    if ints is not None:
        if fmt is OutputFormat.CSV:
            return " ".join(str(v) for v in ints)
        return "(" + ",".join(str(v) for v in ints) + ")"
    if isinstance(value, (tuple, list)):
        separator = " " if fmt is OutputFormat.CSV else ", "
        inner = separator.join(format_cell(v, fmt) for v in value)
        return inner if fmt is OutputFormat.CSV else f"({inner})"
    return str(value)


def to_jsonable(value: Any) -> Any:
    """Convert result values to JSON-ready data."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, float):
        if math.isnan(value) or math.isinf(value):
            return str(value)
        return float(format_float(value))
    ints = _ints(value)
    if ints is not None:
        return list(ints)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


def render_json(result: CommandResult) -> str:
    if result.payload is not None:
        data = result.payload
    else:
        data = {
            "command": result.command,
            "rows": [dict(zip(result.header, row)) for row in result.rows],
            **result.summary,
        }
    return json.dumps(to_jsonable(data), indent=2) + "\n"


def render_csv(result: CommandResult) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(result.header)
    for row in result.rows:
        writer.writerow([format_cell(value, OutputFormat.CSV) for value in row])
    return buffer.getvalue()


def render_pretty(result: CommandResult) -> str:
    cells = [[format_cell(v, OutputFormat.PRETTY) for v in row] for row in result.rows]
    lines = []
    if result.header:
        widths = [len(h) for h in result.header]
        for row in cells:
            widths = [max(w, len(c)) for w, c in zip(widths, row)]
        lines.append("  ".join(h.ljust(w) for h, w in zip(result.header, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        for row in cells:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    for key, value in result.summary.items():
        lines.append(f"{key}: {format_cell(value, OutputFormat.PRETTY)}")
    return "\n".join(lines) + "\n"


def render(result: CommandResult, fmt: "OutputFormat | str" = OutputFormat.PRETTY) -> str:
    """Render ``result`` in the requested format."""
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.JSON:
        return render_json(result)
    if fmt is OutputFormat.CSV:
        return render_csv(result)
    return render_pretty(result)
