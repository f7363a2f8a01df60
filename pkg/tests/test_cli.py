import json

import pytest

from fibrant.cli import main


@pytest.fixture
def run(capsys):
    def invoke(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


class TestClassifyTriple:
    def test_star_type(self, run):
        code, out, _ = run("classify-triple", "2", "3", "7")
        assert code == 0
        payload = json.loads(out)
        assert payload["kodaira"]["tag"] == "I1*"

    def test_reduction_applied(self, run):
        code, out, _ = run("classify-triple", "6", "9", "18")
        payload = json.loads(out)
        assert payload["reduced"] == [2, 3, 6]
        assert payload["kodaira"]["tag"] == "I0*"


class TestCollide:
    def test_label(self, run):
        code, out, _ = run("collide", "I1", "I4")
        assert code == 0
        assert json.loads(out)["collision"]["label"] == "I5"

    def test_off_list_is_an_error(self, run):
        code, _, err = run("collide", "IV*", "IV")
        assert code == 1
        assert "not on the list" in err


class TestAnalyze:
    def test_json_contains_line_divisor(self, run):
        code, out, _ = run("analyze", "--alpha", "1")
        assert code == 0
        payload = json.loads(out)
        tags = {d["name"]: d["kodaira"]["tag"] for d in payload["report"]["divisors"]}
        assert tags["L~"] == "I1*"

    def test_genericity_exit_code(self, run):
        code, _, err = run("analyze", "--alpha", "4")
        assert code == 2
        assert "excluded" in err

    def test_markdown_table(self, run):
        code, out, _ = run("analyze", "--alpha", "1", "--format", "md")
        assert code == 0
        assert "| L~ | (2,3,7) | I1* |" in out
        assert "I4*" in out and "I5" in out and "I3*" in out

    def test_byte_stability(self, run):
        _, first, _ = run("analyze", "--alpha", "1")
        _, second, _ = run("analyze", "--alpha", "1")
        assert first == second

    def test_budget_env(self, run, monkeypatch):
        monkeypatch.setenv("FIBRANT_BLOWUP_BUDGET", "1")
        code, _, err = run("analyze", "--alpha", "1")
        assert code == 1
        assert "budget" in err


class TestBlowupDemo:
    def test_cusp_charts(self, run):
        code, out, _ = run("blowup-demo", "cusp")
        assert code == 0
        payload = json.loads(out)["demo"]
        assert payload["blow_ups"] == 3
        deltas = {c["delta_hat"] for c in payload["final_charts"]}
        assert deltas == {
            "-27*x3^6*y3^4 + x3^6*y3^3",
            "p3^3*q3^6 - 27*p3^2*q3^6",
        }

    def test_p001(self, run):
        code, out, _ = run("blowup-demo", "p001")
        payload = json.loads(out)["demo"]
        tags = {d["name"]: d["kodaira"]["tag"] for d in payload["divisors"]}
        assert tags == {"E1": "I2*", "E2": "I4"}


class TestBracketCheck:
    def test_all_zero(self, run):
        code, out, _ = run("bracket-check", "--m", "1/2")
        payload = json.loads(out)
        assert payload["all_zero"] is True
        assert payload["casimirs_central"] is True
        assert set(payload["conservation"].values()) == {"0"}


class TestSampleFiber:
    def test_residuals_reported(self, run):
        code, out, _ = run(
            "sample-fiber", "--h3", "3/5", "--h4", "2/7", "--a", "1/3", "--m", "1/2",
            "-n", "3", "--seed", "11",
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload["points"]) == 3
        for point in payload["points"]:
            assert float(point["cubic_residual"]) < 1e-9
            assert len(point["gamma"]) == 3


class TestMonodromyCommand:
    def test_solutions(self, run):
        code, out, _ = run("monodromy", "--bound", "10")
        payload = json.loads(out)
        assert payload["node_solutions"] == [[[1, 1], [0, 1]]]
        assert payload["cusp_normal_forms"] == ["[[1, 0], [-1, 1]]"]
        assert payload["braid_certificate"] is True


class TestInputValidation:
    def test_float_rejected(self, run):
        with pytest.raises(SystemExit):
            run("analyze", "--alpha", "0.5x")

    def test_version_key_present(self, run):
        _, out, _ = run("classify-triple", "0", "0", "1")
        assert "version" in json.loads(out)
