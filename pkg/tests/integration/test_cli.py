#!/usr/bin/env python3
"""
End-to-end tests of the gsp4verify command line.
"""

import csv
import io
import json

import pytest

from gsp4verify.algebra import scalar_field
from gsp4verify.cli import EXIT_CHECK_FAILED, EXIT_ERROR, EXIT_OK, main, parse_specialization
from gsp4verify.errors import ConfigError
from gsp4verify.verify import CHECKS, CheckOutcome


@pytest.fixture(autouse=True)
def home(tmp_path, monkeypatch):
    """Keep settings.json out of the real home directory."""
    monkeypatch.setenv("GSP4VERIFY_HOME", str(tmp_path / "home"))
    return tmp_path / "home"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_settings_file_created(capsys, home):
    code, _, _ = run(capsys, "branching", "--tuple", "1", "1", "0", "0")
    assert code == EXIT_OK
    assert (home / "settings.json").exists()


def test_branching_tuple(capsys):
    code, out, _ = run(capsys, "branching", "--tuple", "1", "1", "0", "0")
    report = json.loads(out)
    assert code == EXIT_OK
    assert report["schema"] == 1
    first, second = report["entries"]
    assert first["side"] == "first_slot"
    assert (first["index"], first["brute_force"]) == (2, "1")
    assert second["index"] == 0


def test_verify_branching_is_byte_identical(capsys):
    _, first, _ = run(capsys, "verify", "branching", "--budget", "3")
    _, second, _ = run(capsys, "verify", "branching", "--budget", "3")
    assert first == second
    report = json.loads(first)
    assert report["summary"]["fail"] == 0
    assert report["run"]["suite"] == "branching"


def test_verify_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(CHECKS.get("branching.ladder"), "function",
                        lambda ctx: CheckOutcome.of(False, reason="forced"))
    code, out, _ = run(capsys, "verify", "branching", "--budget", "2")
    assert code == EXIT_CHECK_FAILED
    assert json.loads(out)["summary"]["fail"] == 1


def test_verify_markdown(capsys):
    code, out, _ = run(capsys, "verify", "branching", "--budget", "2", "--format", "markdown")
    assert code == EXIT_OK
    assert out.startswith("# gsp4verify report")


def test_eis_qexp_defaults_to_csv(capsys):
    code, out, _ = run(capsys, "eis-qexp", "--p", "3", "--tag", "dep", "--k", "2", "--N", "6")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK
    assert rows[0] == ["n", "coefficient"]
    assert rows[1] == ["0", "a0"]
    assert rows[2][0] == "1"
    assert scalar_field(3).parse(rows[2][1]) == 2
    assert len(rows) == 8


def test_eis_qexp_json_when_asked(capsys):
    code, out, _ = run(capsys, "eis-qexp", "--p", "3", "--tag", "crit", "--k", "2",
                       "--N", "9", "--op", "U_p", "--format", "json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["operators"] == ["U_p"]
    assert payload["weight"] == 4
    assert set(payload["coefficients"]) == {"0", "1", "2", "3"}


def test_zeta_table_twisted_row(capsys):
    """rho defaults to nu1 nu2, so dep(mu1) x crit(mu1^-1) gives 1."""
    code, out, _ = run(capsys, "zeta-table", "--p", "3", "--r1", "1", "--r2", "1", "--q", "1",
                       "--r", "0", "--slot1", "dep", "--slot2", "crit", "--mu1", "3", "--nu2", "3")
    (row,) = json.loads(out)["rows"]
    assert code == EXIT_OK
    assert row["slots"] == "dep,crit"
    assert scalar_field(3).parse(row["normalized_ratio"]) == 1
    assert scalar_field(3).parse(row["Ztilde"]) == 1


def test_output_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "branching", "--budget", "2", "-o", str(target))
    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text())["summary"]["total"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("eis-qexp", "--p", "3", "--tag", "crit", "--k", "0"),
        ("constants", "--spec", "a=x"),
        ("constants", "--format", "markdown"),
        ("branching", "--p", "4"),
        ("constants", "--q", "1", "--r", "1"),
        ("verify", "branching", "--jobs", "0"),
    ],
)
def test_invalid_input_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_ERROR
    assert out == ""
    assert "Error: " in err


def test_bad_settings_file(capsys, home):
    home.mkdir(parents=True)
    (home / "settings.json").write_text('{"truncation": "many"}')
    code, _, err = run(capsys, "branching", "--tuple", "1", "1", "0", "0")
    assert code == EXIT_ERROR
    assert "truncation" in err


def test_parse_specialization():
    assert parse_specialization("a=1/2, b=3") == {"a": 0.5, "b": 3}
    with pytest.raises(ConfigError):
        parse_specialization("d=1")
