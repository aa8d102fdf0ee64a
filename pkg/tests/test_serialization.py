"""
Tests for serialization.py
Tests for rendering command results as json, csv and pretty text.
"""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from src.core.verification_controller import VerificationController
from src.partition_distributions.partitions import Partition, to_multiplicity
from src.partition_distributions.serialization import (
    CommandResult,
    OutputFormat,
    format_cell,
    format_float,
    render,
    render_csv,
    render_json,
    render_pretty,
    to_jsonable,
)

DATA_DIR = Path(__file__).parent / "data"


class TestFormatCell:
    """Tests for format_cell and format_float."""

    @pytest.mark.parametrize("value,csv_text,pretty_text", [
        (Fraction(1, 6), "1/6", "1/6"),
        (Fraction(4), "4", "4"),
        (True, "true", "true"),
        (None, "", ""),
        (Partition((3, 1, 1)), "3 1 1", "(3,1,1)"),
        ((2, 0, 1, 0, 0), "2 0 1 0 0", "(2,0,1,0,0)"),
        ((Fraction(1, 2), Fraction(0)), "1/2 0", "(1/2, 0)"),
    ])
    def test_cells(self, value, csv_text, pretty_text):
        assert format_cell(value, OutputFormat.CSV) == csv_text
        assert format_cell(value, OutputFormat.PRETTY) == pretty_text

    def test_vectors(self):
        m = to_multiplicity(Partition((2, 1)))
        assert format_cell(m, OutputFormat.CSV) == "1 1 0"

    def test_floats(self):
        assert format_float(0.1 + 0.2) == "0.3"
        assert format_float(1 / 3) == "0.333333333333"
        assert format_float(float("inf")) == "inf"


class TestJson:
    """Tests for to_jsonable and render_json."""

    def test_to_jsonable(self):
        data = to_jsonable({1: Fraction(1, 2), "p": Partition((2, 1)), "ok": False, "v": [Fraction(3)]})
        assert data == {"1": "1/2", "p": [2, 1], "ok": False, "v": ["3"]}

    def test_rows_and_summary(self):
        result = CommandResult(
            command="demo", header=("n", "value"), rows=[(1, Fraction(1, 2))], summary={"total": Fraction(1)}
        )
        data = json.loads(render_json(result))
        assert data == {"command": "demo", "rows": [{"n": 1, "value": "1/2"}], "total": "1"}

    def test_payload_wins(self):
        result = CommandResult(command="demo", rows=[(1,)], payload={"x": Fraction(2, 3)})
        assert json.loads(render(result, "json")) == {"x": "2/3"}

    def test_trailing_newline(self):
        assert render_json(CommandResult(command="demo")).endswith("}\n")


class TestCsv:
    """Tests for render_csv."""

    def test_enumerate_golden(self):
        result = VerificationController().enumerate(5)
        expected = (DATA_DIR / "enumerate_5.csv").read_text(encoding="utf-8")
        assert render_csv(result) == expected

    def test_header_without_rows(self):
        result = CommandResult(command="demo", header=("a", "b"))
        assert render(result, OutputFormat.CSV) == "a,b\n"


class TestPretty:
    """Tests for render_pretty."""

    def test_aligned_table_and_summary(self):
        result = CommandResult(
            command="demo",
            header=("n", "value"),
            rows=[(1, Fraction(1, 2)), (10, Fraction(1, 3))],
            summary={"total": Fraction(5, 6)},
        )
        assert render_pretty(result) == (
            "n   value\n"
            "--  -----\n"
            "1   1/2\n"
            "10  1/3\n"
            "total: 5/6\n"
        )

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            render(CommandResult(command="demo"), "xml")
