import json
import math
import subprocess
import sys

import pytest

from binomfactor.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDecomposeCommand:
    def test_showcase_pretty(self, capsys):
        code, out, _ = run_cli(capsys, "decompose", "2000", "1000")
        assert code == 0
        assert "(1000, 2000]" in out and "(500, 666]" in out

    def test_exact_endpoints(self, capsys):
        code, out, _ = run_cli(capsys, "decompose", "2000", "1000", "--exact")
        assert code == 0
        assert "2000/3" in out

    def test_verify_success(self, capsys):
        code, _, err = run_cli(capsys, "decompose", "2000", "800", "--verify")
        assert code == 0
        assert "verified" in err

    def test_empty_diagonal(self, capsys):
        code, out, _ = run_cli(capsys, "decompose", "5", "5")
        assert code == 0
        assert "empty" in out

    def test_domain_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "decompose", "5", "9")
        assert code == 2
        assert "error" in err

    def test_verification_failure_exit_3(self, capsys, monkeypatch):
        # the check never fails on real inputs; force a disagreement to
        # pin the exit-code contract
        import binomfactor.cli as cli_mod
        monkeypatch.setattr(cli_mod, "equivalence_check", lambda n, k, t: 13)
        code, out, err = run_cli(capsys, "decompose", "100", "40", "--verify")
        assert code == 3
        assert "13" in err
        assert "(60, 100]" in out  # stdout is still the normal rendering

    def test_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "decompose", "40", "17", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert doc["n"] == 40 and doc["k"] == 17
        assert doc["levels"][0]["i"] == 1
        first = doc["levels"][0]["intervals"][0]
        assert set(first["lower"]) == {"num", "den"}

    def test_json_deterministic(self, capsys):
        _, out1, _ = run_cli(capsys, "decompose", "300", "123", "--format", "json")
        _, out2, _ = run_cli(capsys, "decompose", "300", "123", "--format", "json")
        assert out1 == out2

    def test_verify_does_not_change_stdout(self, capsys):
        _, plain, _ = run_cli(capsys, "decompose", "400", "111", "--format", "json")
        _, verified, _ = run_cli(capsys, "decompose", "400", "111", "--format",
                                 "json", "--verify")
        assert plain == verified

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "dec.json"
        code, out, _ = run_cli(capsys, "decompose", "40", "17",
                               "--format", "json", "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["n"] == 40


class TestIdentityCommand:
    def test_thm1_single(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "thm1", "--n", "2", "--m", "1",
                               "--k", "1000")
        assert code == 0
        assert "lhs=208" in out and "rhs=202" in out

    def test_thm1_zero_row(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "thm1", "--n", "1", "--m", "1",
                               "--k", "50")
        assert code == 0
        assert "residual=0" in out

    def test_thm1_grid_json(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "thm1", "--n", "3", "--m", "1",
                               "--grid", "10,100", "--format", "json")
        assert code == 0
        doc = json.loads(out)
        assert len(doc["reports"]) == 2
        assert all(r["identity_id"] == "omega_pi" for r in doc["reports"])

    def test_thm3(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "thm3", "--num-parts", "2",
                               "--den-parts", "1,1", "--k", "10")
        assert code == 0
        assert f"{math.log(184756):.6f}"[:8] in out

    def test_altpi(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "altpi", "--x", "100000")
        assert code == 0
        assert "6492" in out

    def test_bertrand_ok(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "bertrand", "--limit", "10000")
        assert code == 0
        assert "verified" in out

    def test_sieve_budget_enforced(self, capsys):
        code, _, err = run_cli(capsys, "identity", "altpi", "--x", "100000",
                               "--sieve-limit", "1000")
        assert code == 2
        assert "sieve" in err

    def test_csv_format(self, capsys):
        code, out, _ = run_cli(capsys, "identity", "thm1", "--n", "2", "--m", "1",
                               "--k", "100", "--format", "csv")
        assert code == 0
        header = out.splitlines()[0]
        assert "identity_id" in header and "residual" in header


class TestBoundsCommand:
    def test_classical_ledger(self, capsys):
        code, out, _ = run_cli(capsys, "bounds")
        assert code == 0
        assert "0.460646" in out and "0.921292" in out
        assert "1.2546" in out and "1.1304" in out and "1.1097" in out

    def test_classical_json_sequence(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--format", "json")
        doc = json.loads(out)
        assert doc["sequence"]["period"] == 60
        assert doc["sequence"]["plus"] == [2, 14, 22, 26, 34, 38, 46, 58]
        assert doc["sequence"]["minus"] == [12, 20, 24, 30, 36, 40, 48, 60]

    def test_non_alternating_exit_4(self, capsys):
        code, _, err = run_cli(capsys, "bounds",
                               "+1/2:1/6,+1/3:1/12,-1/10:1/60,+1/12:1/84")
        assert code == 4
        assert "26" in err

    def test_empty_spec_zeroes(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "")
        assert code == 0
        assert "0.000000" in out

    def test_psi_variant(self, capsys):
        code, out, _ = run_cli(capsys, "bounds", "--psi", "--k-grid", "7,100")
        assert code == 0
        assert "0.921292" in out

    def test_bad_spec_syntax_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "bounds", "nonsense")
        assert code == 2


class TestLogkCommand:
    def test_log2(self, capsys):
        code, out, _ = run_cli(capsys, "logk", "2", "--terms", "1000000")
        assert code == 0
        assert "0.693146" in out

    def test_log3(self, capsys):
        code, out, _ = run_cli(capsys, "logk", "3", "--terms", "1000000")
        assert code == 0
        assert "1.098612" in out or "1.098611" in out

    def test_log1_fast_path(self, capsys):
        code, out, _ = run_cli(capsys, "logk", "1")
        assert code == 0
        assert "0.000000000" in out

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "logk", "5", "--terms", "10000",
                               "--format", "json")
        doc = json.loads(out)
        assert doc["k"] == 5 and doc["terms"] == 10000
        assert abs(doc["partial_sum"] - math.log(5)) < doc["tail_bound"]


class TestEnvironment:
    def test_env_var_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("BINOMFACTOR_SIEVE_LIMIT", "100")
        code, _, err = run_cli(capsys, "identity", "altpi", "--x", "100000")
        assert code == 2

    def test_flag_overrides_env(self, capsys, monkeypatch):
        monkeypatch.setenv("BINOMFACTOR_SIEVE_LIMIT", "100")
        code, _, _ = run_cli(capsys, "identity", "altpi", "--x", "100000",
                             "--sieve-limit", "200000")
        assert code == 0

    def test_console_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "binomfactor.cli", "logk", "2", "--terms", "100"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "log 2" in proc.stdout
