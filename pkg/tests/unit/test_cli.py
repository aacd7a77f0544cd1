"""
Unit tests for the CLI module.
"""

import json
from unittest.mock import MagicMock, patch

import pytest

from antimagic import __version__
from antimagic.cli import build_parser, gen_command, run_cli
from antimagic.exceptions import InternalAssertionError
from antimagic.selftest import CheckResult


@pytest.fixture
def k33_file(tmp_path):
    """K3,3 written by the gen command."""
    path = tmp_path / "k33.txt"
    assert run_cli(["gen", "--family", "complete-bipartite", "--a", "3", "--b", "3",
                    "--out", str(path)]) == 0
    return path


def test_gen_orient_verify(tmp_path, k33_file, capsys, monkeypatch):
    """Test the gen, orient, verify round on K3,3."""
    monkeypatch.delenv("ANTIMAGIC_SEED", raising=False)
    cert_path = tmp_path / "cert.json"
    code = run_cli(["orient", "--mode", "bipartite", "--input", str(k33_file),
                    "--output", str(cert_path)])
    assert code == 0

    document = json.loads(cert_path.read_text())
    assert document["n"] == 6
    assert sorted(arc["label"] for arc in document["arcs"]) == list(range(1, 10))
    assert document["meta"]["pipeline"] == "bipartite"
    assert document["meta"]["seed"] is None

    capsys.readouterr()
    assert run_cli(["verify", str(cert_path)]) == 0
    assert capsys.readouterr().out.strip() == "accept"


def test_orient_to_stdout(k33_file, capsys):
    """Test the certificate goes to stdout without --output."""
    assert run_cli(["orient", "--mode", "bipartite", "--input", str(k33_file)]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["m"] == 9


def test_orient_seed_from_environment(k33_file, monkeypatch, capsys):
    """Test ANTIMAGIC_SEED is recorded when --seed is absent."""
    monkeypatch.setenv("ANTIMAGIC_SEED", "42")
    assert run_cli(["orient", "--mode", "bipartite", "--input", str(k33_file)]) == 0
    assert json.loads(capsys.readouterr().out)["meta"]["seed"] == 42


def test_orient_bad_seed_environment(k33_file, monkeypatch, capsys):
    """Test a non-integer ANTIMAGIC_SEED is malformed input."""
    monkeypatch.setenv("ANTIMAGIC_SEED", "abc")
    assert run_cli(["orient", "--mode", "bipartite", "--input", str(k33_file)]) == 3
    assert "ANTIMAGIC_SEED" in capsys.readouterr().err


def test_orient_degree_two_is_precondition(tmp_path, capsys):
    """Test a vertex of degree 2 exits with status 2."""
    path = tmp_path / "p3.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    assert run_cli(["orient", "--mode", "bipartite", "--input", str(path)]) == 2
    assert "Error:" in capsys.readouterr().err


def test_orient_low_degree_mindegree(tmp_path):
    """Test the minimum-degree pipeline refuses a sparse graph."""
    path = tmp_path / "k33.txt"
    run_cli(["gen", "--family", "complete-bipartite", "--a", "3", "--b", "3", "--out", str(path)])
    assert run_cli(["orient", "--mode", "mindegree", "--input", str(path)]) == 2


def test_orient_mindegree_k34(tmp_path, capsys):
    """Test the minimum-degree pipeline accepts K34 end to end."""
    path = tmp_path / "k34.txt"
    assert run_cli(["gen", "--family", "complete", "--n", "34", "--out", str(path)]) == 0
    assert run_cli(["orient", "--mode", "mindegree", "--input", str(path)]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["m"] == 561
    assert document["meta"]["pipeline"] == "mindegree"


def test_unknown_log_level(k33_file, capsys):
    """Test an unknown log level is malformed input, not a traceback."""
    argv = ["--log-level", "bogus", "orient", "--mode", "bipartite", "--input", str(k33_file)]
    assert run_cli(argv) == 3
    assert "Unknown log level: bogus" in capsys.readouterr().err


@pytest.mark.parametrize(
    "text",
    ["3 5\n0 1\n", "two one\n", "3 1\n0 0\n"],
)
def test_orient_malformed_input(tmp_path, text):
    """Test unreadable edge lists exit with status 3."""
    path = tmp_path / "bad.txt"
    path.write_text(text)
    assert run_cli(["orient", "--mode", "bipartite", "--input", str(path)]) == 3


def test_orient_missing_file(tmp_path):
    """Test a missing input file exits with status 3."""
    missing = tmp_path / "missing.txt"
    assert run_cli(["orient", "--mode", "bipartite", "--input", str(missing)]) == 3


def test_verify_tampered_certificate(tmp_path, k33_file, capsys):
    """Test a tampered certificate is rejected with status 1."""
    cert_path = tmp_path / "cert.json"
    run_cli(["orient", "--mode", "bipartite", "--input", str(k33_file), "--output", str(cert_path)])
    document = json.loads(cert_path.read_text())
    document["arcs"][0]["label"] = document["arcs"][1]["label"]
    cert_path.write_text(json.dumps(document))

    capsys.readouterr()
    assert run_cli(["verify", "--json", str(cert_path)]) == 1
    verdict = json.loads(capsys.readouterr().out)
    assert verdict["accepted"] is False
    assert verdict["violation"] == "duplicate-label"
    assert verdict["witness"] == [0, 1]


def test_verify_not_json(tmp_path):
    """Test a certificate that is not JSON exits with status 3."""
    path = tmp_path / "cert.json"
    path.write_text("not json")
    assert run_cli(["verify", str(path)]) == 3


def test_gen_to_stdout(capsys):
    """Test gen writes the edge list to stdout."""
    assert run_cli(["gen", "--family", "star", "--t", "3"]) == 0
    assert capsys.readouterr().out == "4 3\n0 1\n0 2\n0 3\n"


def test_gen_is_reproducible(capsys):
    """Test the same seed gives the same random graph."""
    argv = ["gen", "--family", "random-bipartite", "--nx", "8", "--ny", "8", "--dmax", "4",
            "--seed", "3"]
    run_cli(argv)
    first = capsys.readouterr().out
    run_cli(argv)
    assert capsys.readouterr().out == first


def test_gen_missing_parameter(capsys):
    """Test a missing family parameter exits with status 2."""
    assert run_cli(["gen", "--family", "complete-bipartite", "--a", "3"]) == 2
    assert "--b is required" in capsys.readouterr().err


def test_gen_command_with_mock_args(capsys):
    """Test gen_command on a hand-built namespace."""
    args = MagicMock()
    args.family = "hypercube"
    args.k = 2
    args.seed = None
    args.out = None
    assert gen_command(args) == 0
    assert capsys.readouterr().out.startswith("4 4\n")


def test_oracle_command(tmp_path, capsys):
    """Test the oracle prints its status and witness arcs."""
    path = tmp_path / "k13.txt"
    path.write_text("4 3\n0 1\n0 2\n0 3\n")
    assert run_cli(["oracle", "--input", str(path)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("exists")
    assert len(lines) == 4
    assert all("->" in line for line in lines[1:])


def test_oracle_too_large(tmp_path):
    """Test the oracle refuses graphs above its edge limit."""
    path = tmp_path / "star.txt"
    run_cli(["gen", "--family", "star", "--t", "11", "--out", str(path)])
    assert run_cli(["oracle", "--input", str(path)]) == 2


@pytest.mark.parametrize("passed, code", [(True, 0), (False, 1)])
def test_selftest_command(passed, code, capsys):
    """Test selftest prints every check and reports failures."""
    results = [CheckResult("one", True, "fine"), CheckResult("two", passed, "detail")]
    with patch("antimagic.cli.run_selftest", return_value=results) as mock_run:
        assert run_cli(["selftest", "--seed", "9"]) == code
    mock_run.assert_called_once_with(seed=9)
    out = capsys.readouterr().out
    assert "PASS one: fine" in out
    assert ("PASS" if passed else "FAIL") + " two: detail" in out


def test_no_command_prints_help(capsys):
    """Test running without a command prints usage."""
    assert run_cli([]) == 0
    assert "usage" in capsys.readouterr().out


def test_version(capsys):
    """Test --version prints the package version."""
    with pytest.raises(SystemExit) as excinfo:
        run_cli(["--version"])
    assert excinfo.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_parser_defaults(monkeypatch):
    """Test the log level default comes from the environment."""
    monkeypatch.setenv("ANTIMAGIC_LOG_LEVEL", "debug")
    args = build_parser().parse_args(["verify", "cert.json"])
    assert args.log_level == "debug"
    assert args.json is False


def test_internal_error_exit_code(k33_file):
    """Test an unexpected internal error exits with status 4."""
    with patch(
        "antimagic.cli.antimagic_orientation_bipartite",
        side_effect=InternalAssertionError("broken"),
    ):
        assert run_cli(["orient", "--mode", "bipartite", "--input", str(k33_file)]) == 4
