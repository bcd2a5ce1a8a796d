import json
import math

import pytest

from biqo import cli
from biqo.report import measure_report


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestQuantify:
    def test_json_is_library_output(self, capsys):
        code, out, _ = run(capsys, "quantify", "--overlap", "0.6", "--format", "json")
        assert code == 0
        assert json.loads(out) == measure_report(0.6).as_dict()

    def test_text(self, capsys):
        code, out, _ = run(capsys, "quantify", "-x", "0.70710678")
        assert code == 0
        assert "q        0.201752" in out
        assert "p_e      0.146447" in out

    def test_theta_degrees(self, capsys):
        _, out, _ = run(capsys, "quantify", "--theta-degrees", "45", "--format", "json")
        assert json.loads(out)["x"] == pytest.approx(1 / math.sqrt(2), abs=1e-15)

    def test_out_of_range(self, capsys):
        code, _, err = run(capsys, "quantify", "--overlap", "1.5")
        assert code == 2
        assert "error" in err

    def test_missing_overlap_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["quantify"])
        assert exc.value.code == 2


class TestCurve:
    def test_rows_and_header(self, capsys):
        code, out, _ = run(capsys, "curve", "--measure", "q", "--steps", "10")
        lines = out.strip().split("\n")
        assert code == 0
        assert lines[0] == "x,q"
        assert len(lines) == 12
        first = lines[1].split(",")
        assert float(first[0]) == 0.0 and float(first[1]) == 0.0

    def test_twelve_significant_digits(self, capsys):
        _, out, _ = run(capsys, "curve", "--measure", "cinf", "--steps", "4")
        x, v = out.strip().split("\n")[2].split(",")
        assert x == "0.25"
        assert v == f"{float(v):.12g}"
        assert len(v.replace("0.", "", 1)) == 12

    def test_minimal_grid(self, capsys):
        _, out, _ = run(capsys, "curve", "--measure", "fg", "--steps", "2", "--format", "json")
        assert [row["x"] for row in json.loads(out)] == [0.0, 0.5, 1.0]

    def test_tradeoff_curve_endpoints(self, capsys):
        code, out, _ = run(
            capsys, "curve", "--measure", "tradeoff", "--overlap", "0.70711", "--steps", "50"
        )
        lines = out.strip().split("\n")
        assert code == 0
        assert lines[0] == "p,d"
        assert len(lines) == 52
        assert float(lines[1].split(",")[1]) == pytest.approx(0.066987, abs=1e-5)
        assert float(lines[-1].split(",")[1]) == 0.0

    def test_tradeoff_needs_overlap(self, capsys):
        code, _, _ = run(capsys, "curve", "--measure", "tradeoff")
        assert code == 2

    def test_too_few_steps(self, capsys):
        code, _, _ = run(capsys, "curve", "--measure", "q", "--steps", "1")
        assert code == 2

    def test_unknown_measure(self):
        with pytest.raises(SystemExit) as exc:
            cli.main(["curve", "--measure", "nope"])
        assert exc.value.code == 2

    def test_writes_file(self, capsys, tmp_path):
        path = tmp_path / "q.csv"
        code, out, _ = run(capsys, "curve", "--measure", "q", "--steps", "3", "--out", str(path))
        assert code == 0 and out == ""
        assert path.read_text().startswith("x,q\n")

    def test_unwritable_path(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "curve", "--measure", "q", "--out", str(tmp_path / "missing" / "q.csv")
        )
        assert code == 3
        assert "cannot write" in err


class TestVerify:
    def test_c1_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "--target", "c1", "--overlap", "0.6")
        assert code == 0
        assert out.strip().endswith("PASS")

    def test_cinf_json(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--target", "cinf", "--overlap", "0.6", "--format", "json"
        )
        doc = json.loads(out)
        assert code == 0 and doc["pass"] is True
        assert doc["argmax_prior"] == pytest.approx(0.5, abs=1e-3)

    def test_clone_global(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--target", "clone-global", "--overlap", "0.57735", "--restarts", "12"
        )
        assert code == 0
        assert "PASS" in out

    def test_tradeoff_at_max_info(self, capsys):
        code, out, _ = run(
            capsys,
            "verify",
            "--target", "tradeoff",
            "--overlap", "0.5",
            "--at-max-info",
            "--restarts", "2",
            "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0 and doc["pass"] is True
        assert doc["p_eve"] == pytest.approx(0.0669873, abs=1e-6)

    def test_coarse_grid_rejected(self, capsys):
        code, out, _ = run(
            capsys, "verify", "--target", "c1", "--overlap", "0.5", "--angle-steps", "5"
        )
        assert code == 2
        assert out == ""

    def test_fail_exit_code(self, capsys, monkeypatch):
        monkeypatch.setattr(cli.capacity, "accessible_info_oracle", lambda x, a, p: 0.0)
        code, out, _ = run(capsys, "verify", "--target", "c1", "--overlap", "0.5")
        assert code == 1
        assert out.strip().endswith("FAIL")


class TestMaximize:
    @pytest.mark.parametrize(
        "measure, ref, tol",
        [("q", 0.70711, 1e-3), ("dmi", 0.70711, 1e-3), ("fg-deficit", 0.57735, 2e-3), ("fl-deficit", 0.5, 2e-3)],
    )
    def test_argmax(self, capsys, measure, ref, tol):
        code, out, _ = run(capsys, "maximize", "--measure", measure, "--format", "json")
        doc = json.loads(out)
        assert code == 0
        assert doc["argmax"] == pytest.approx(ref, abs=tol)
        assert doc["deviation"] <= tol


class TestSimulate:
    def test_no_eve(self, capsys):
        code, out, _ = run(
            capsys, "simulate", "-x", "0.7", "--eve", "off", "--rounds", "1000", "--format", "json"
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["disturbance_rate"] == 0.0
        assert doc["eve_present"] is False

    def test_same_seed_same_bytes(self, capsys):
        argv = ["simulate", "-x", "0.7", "--rounds", "2000", "--restarts", "1", "--seed", "5",
                "--format", "json"]
        _, a, _ = run(capsys, *argv)
        _, b, _ = run(capsys, *argv)
        assert a == b

    def test_seed_from_environment(self, capsys, monkeypatch):
        argv = ["simulate", "-x", "0.7", "--eve", "off", "--rounds", "100", "--format", "json"]
        monkeypatch.setenv("BIQO_SEED", "17")
        _, out, _ = run(capsys, *argv)
        assert json.loads(out)["seed"] == 17
        monkeypatch.setenv("BIQO_SEED", "seventeen")
        code, _, err = run(capsys, *argv)
        assert code == 2
        assert "BIQO_SEED" in err

    def test_explicit_seed_wins(self, capsys, monkeypatch):
        monkeypatch.setenv("BIQO_SEED", "17")
        _, out, _ = run(
            capsys, "simulate", "-x", "0.7", "--eve", "off", "--rounds", "100", "--seed", "3",
            "--format", "json",
        )
        assert json.loads(out)["seed"] == 3
