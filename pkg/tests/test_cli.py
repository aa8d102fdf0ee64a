"""
Tests for cli.py
End-to-end tests of the command line: output formats, exit codes and
option resolution.
"""

import io
import json
import tempfile
from fractions import Fraction
from pathlib import Path

import pytest

from src.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, run
from src.partition_distributions import distribution, mgf

DATA_DIR = Path(__file__).parent / "data"


def invoke(*argv):
    """Run the CLI and return (status, stdout, stderr)."""
    stdout, stderr = io.StringIO(), io.StringIO()
    status = run(list(argv), stdout=stdout, stderr=stderr)
    return status, stdout.getvalue(), stderr.getvalue()


@pytest.fixture
def empty_config():
    """A config file with no defaults, so nothing leaks in from the environment."""
    with tempfile.TemporaryDirectory() as tmpdir:
        path = Path(tmpdir) / "partdist_config.yml"
        path.write_text("defaults: {}\n", encoding="utf-8")
        yield str(path)


class TestOutputs:
    """Output of the exact commands."""

    def test_enumerate_csv_golden(self, empty_config):
        status, out, err = invoke("enumerate", "--n", "5", "--format", "csv", "--config", empty_config)
        assert status == EXIT_OK
        assert out == (DATA_DIR / "enumerate_5.csv").read_text(encoding="utf-8")
        assert err == ""

    def test_pmf_pretty(self, empty_config):
        status, out, _ = invoke("pmf", "--n", "3", "--config", empty_config)
        assert status == EXIT_OK
        lines = out.splitlines()
        assert lines[0].split() == ["partition", "multiplicity_vector", "partition_vector", "probability"]
        assert lines[2].split() == ["(3)", "(0,0,1)", "(3,0,0)", "1/3"]
        assert lines[-1] == "total: 1"

    def test_pmf_json_entries(self, empty_config):
        """json output is one object per cycle type."""
        status, out, _ = invoke("pmf", "--n", "3", "--format", "json", "--config", empty_config)
        data = json.loads(out)
        assert status == EXIT_OK
        assert [entry["partition"] for entry in data] == [[3], [2, 1], [1, 1, 1]]
        assert [entry["probability"] for entry in data] == ["1/3", "1/2", "1/6"]
        assert data[0]["multiplicity_vector"] == [0, 0, 1]

    def test_ymoments_json(self, empty_config):
        status, out, _ = invoke("ymoments", "--n", "3", "--format", "json", "--config", empty_config)
        data = json.loads(out)
        assert status == EXIT_OK
        assert data["expectation"] == ["1", "1/2", "1/3"]
        assert data["a_matrix"][0] == ["1", "1/2", "0"]

    def test_cov_verify(self, empty_config):
        status, out, _ = invoke("cov", "--n", "6", "--verify", "--format", "json", "--config", empty_config)
        data = json.loads(out)
        assert status == EXIT_OK
        assert data["weighted_sum"] == "0"
        assert data["verified"] is True
        assert data["mismatches"] == []

    def test_xseq_csv(self, empty_config):
        status, out, _ = invoke(
            "xseq", "--component", "1", "--max-n", "10", "--format", "csv", "--config", empty_config
        )
        lines = out.splitlines()
        assert status == EXIT_OK
        assert lines[0] == "n,component,scaled_value,conjecture_value,match,provenance"
        assert lines[-1] == "10,1,23759791,,,reference"

    def test_xseq_from_end(self, empty_config):
        status, out, _ = invoke(
            "xseq", "--component", "2", "--max-n", "8", "--from-end", "--format", "json",
            "--config", empty_config,
        )
        rows = json.loads(out)["rows"]
        assert status == EXIT_OK
        assert rows[0]["match"] is None
        assert all(row["match"] is True for row in rows if row["n"] >= 5)

    def test_fit_json(self, empty_config):
        status, out, _ = invoke("fit", "--j", "2", "--format", "json", "--config", empty_config)
        data = json.loads(out)
        assert status == EXIT_OK
        assert data["coefficients"] == {"2": "1", "3": "2", "4": "3"}
        assert data["all_positive_integers"] is True
        assert data["sample_range"] == [5, 6, 7]

    def test_fit_custom_samples(self, empty_config):
        status, out, _ = invoke("fit", "--j", "1", "--samples", "4,6", "--format", "json", "--config", empty_config)
        assert status == EXIT_OK
        assert json.loads(out)["sample_range"] == [4]

    def test_asymptotics_json(self, empty_config):
        status, out, _ = invoke("asymptotics", "--j", "2", "--format", "json", "--config", empty_config)
        data = json.loads(out)
        assert status == EXIT_OK
        assert data["degree"] == 4
        assert data["leading"] == "1/8"
        assert data["next_matches_printed"] is False
        assert data["next_matches_sign_corrected"] is True

    @pytest.mark.parametrize("argv", [("verify-fine", "--max-n", "12"), ("verify-mgf", "--max-n", "6")])
    def test_verifications_pass(self, argv, empty_config):
        status, _, _ = invoke(*argv, "--config", empty_config)
        assert status == EXIT_OK

    def test_xtable(self, empty_config):
        status, out, _ = invoke("xtable", "--max-n", "3", "--format", "csv", "--config", empty_config)
        assert status == EXIT_OK
        assert out.splitlines()[1:] == ["1,1", "2,3 1", "3,13 4 1"]


class TestExitCodes:
    """Usage errors, parameter errors and mismatches."""

    @pytest.mark.parametrize("argv", [
        (),
        ("pmf",),
        ("pmf", "--n", "abc"),
        ("frobnicate",),
        ("pmf", "--n", "3", "--format", "xml"),
        ("fit", "--j", "2", "--samples", "5,x"),
    ])
    def test_usage_errors(self, argv):
        status, out, err = invoke(*argv)
        assert status == EXIT_USAGE
        assert out == ""
        assert err.startswith("partdist: error:")
        assert err.count("\n") == 1

    @pytest.mark.parametrize("argv", [
        ("pmf", "--n", "61"),
        ("pmf", "--n", "-1"),
        ("cov", "--n", "0"),
        ("xseq", "--component", "4", "--max-n", "3"),
        ("fit", "--j", "2", "--samples", "5,6"),
        ("fit", "--j", "2", "--samples", "3,4,5"),
        ("sample", "--n", "5", "--trials", "0", "--seed", "1"),
        ("sample", "--n", "5", "--trials", "10", "--seed", "-1"),
        ("pmf", "--n", "3", "--workers", "0"),
    ])
    def test_parameter_errors(self, argv, empty_config):
        status, out, err = invoke(*argv, "--config", empty_config)
        assert status == EXIT_USAGE
        assert out == ""
        assert err.startswith("partdist: error:")

    def test_env_lowers_limit(self, monkeypatch, empty_config):
        monkeypatch.setenv("PARTDIST_MAX_N", "5")
        assert invoke("pmf", "--n", "5", "--config", empty_config)[0] == EXIT_OK
        status, _, err = invoke("pmf", "--n", "6", "--config", empty_config)
        assert status == EXIT_USAGE
        assert "limit of 5" in err

    def test_env_cannot_raise_limit(self, monkeypatch, empty_config):
        monkeypatch.setenv("PARTDIST_MAX_N", "100")
        assert invoke("verify-fine", "--max-n", "61", "--config", empty_config)[0] == EXIT_USAGE

    def test_mismatch_exits_2(self, monkeypatch, empty_config):
        original = distribution.covariance_y

        def broken(n):
            rows = [list(row) for row in original(n)]
            rows[0][0] += Fraction(1, 7)
            return tuple(tuple(row) for row in rows)

        monkeypatch.setattr(distribution, "covariance_y", broken)
        status, out, err = invoke("cov", "--n", "4", "--verify", "--config", empty_config)
        assert status == EXIT_MISMATCH
        assert "covariance[1,1]" in out
        assert "mismatch" in err

    def test_mgf_mismatch_lists_terms(self, monkeypatch, empty_config):
        """A wrong recursion side is reported per (n, i) with the differing terms."""
        original = mgf.recursion_rhs

        def doubled(n, i):
            return original(n, i).scale(Fraction(2))

        monkeypatch.setattr(mgf, "recursion_rhs", doubled)
        status, out, _ = invoke("verify-mgf", "--max-n", "3", "--format", "json", "--config", empty_config)
        data = json.loads(out)
        assert status == EXIT_MISMATCH
        assert [(v["n"], v["i"]) for v in data] == [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]
        assert set(data[0]) == {"n", "i", "ok", "mismatches"}
        assert all(v["ok"] is False for v in data)
        first = data[0]["mismatches"][0]
        assert set(first) == {"exponent", "left", "right"}
        assert Fraction(first["right"]) == 2 * Fraction(first["left"])

    def test_help(self, capsys):
        assert run(["--help"]) == EXIT_OK
        assert "partdist" in capsys.readouterr().out

    def test_version(self, capsys):
        assert run(["--version"]) == EXIT_OK
        assert capsys.readouterr().out.startswith("partdist ")


class TestSampleCommand:
    """The sample command and option resolution."""

    def test_deterministic_across_workers(self, empty_config):
        argv = ("sample", "--n", "5", "--trials", "3000", "--seed", "9", "--format", "json", "--config", empty_config)
        one = invoke(*argv, "--workers", "1")
        two = invoke(*argv, "--workers", "2")
        assert one[0] == two[0] == EXIT_OK
        assert one[1] == two[1]
        data = json.loads(one[1])
        assert data["trials"] == 3000
        assert data["chi_square"]["status"] == "tested"
        assert [m["component"] for m in data["moments"]] == ["Y"] * 5 + ["X"] * 5
        assert isinstance(data["moments_within_threshold"], bool)

    def test_requires_trials_and_seed(self, empty_config):
        status, _, err = invoke("sample", "--n", "5", "--config", empty_config)
        assert status == EXIT_USAGE
        assert "--trials" in err

    def test_defaults_from_config(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "partdist_config.yml"
            path.write_text("defaults:\n  format: csv\n  trials: 200\n  seed: 3\n", encoding="utf-8")
            status, out, _ = invoke("sample", "--n", "3", "--config", str(path))
        assert status == EXIT_OK
        assert out.splitlines()[0] == "partition,count,frequency,exact,z"

    def test_command_line_beats_config(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "partdist_config.yml"
            path.write_text("defaults:\n  format: csv\n", encoding="utf-8")
            status, out, _ = invoke("pmf", "--n", "2", "--format", "json", "--config", str(path))
        assert status == EXIT_OK
        assert json.loads(out)[0]["probability"] == "1/2"

    def test_bad_config_format_rejected(self):
        """A format from the config file goes through the same check as --format."""
        with tempfile.TemporaryDirectory() as tmpdir:
            path = Path(tmpdir) / "partdist_config.yml"
            path.write_text("defaults:\n  format: xml\n", encoding="utf-8")
            status, out, err = invoke("pmf", "--n", "2", "--config", str(path))
        assert status == EXIT_USAGE
        assert out == ""
        assert err.startswith("partdist: error: config format: must be one of json, csv, pretty")

    def test_large_n_skips_exact_checks(self, empty_config):
        status, out, _ = invoke(
            "sample", "--n", "80", "--trials", "50", "--seed", "1", "--format", "json", "--config", empty_config
        )
        data = json.loads(out)
        assert status == EXIT_OK
        assert data["chi_square"]["status"] == "skipped"
        assert data["z_scores"] == []
