import csv
import io
import json
import subprocess
import sys
from fractions import Fraction as F

import pytest
from click.testing import CliRunner

from kanterbound import LatticePMF, sympois_truncated
from kanterbound.bessel import g_value
from kanterbound.cli import cli

PM1 = {"atoms": [["-1", "1/2"], ["1", "1/2"]]}


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def pm1(tmp_path):
    path = tmp_path / "pm1.json"
    path.write_text(json.dumps(PM1))
    return str(path)


class TestBoundConc:
    def test_two_signs(self, runner, pm1):
        res = runner.invoke(cli, ["bound-conc", pm1, pm1, "--t", "1"])
        assert res.exit_code == 0
        report = json.loads(res.stdout)
        assert report["chain"][0]["value"] == "1/2"
        assert report["chain"][1]["label"] == "G(|p|)"
        assert float(report["chain"][1]["value"]) == g_value(2).value

    def test_csv(self, runner, pm1):
        res = runner.invoke(cli, ["bound-conc", pm1, "--t", "1", "--format", "csv"])
        rows = list(csv.reader(io.StringIO(res.stdout)))
        assert rows[0] == ["label", "value", "citation"] and len(rows) == 6

    def test_empty_file_list(self, runner):
        assert runner.invoke(cli, ["bound-conc", "--t", "1"]).exit_code == 2

    def test_negative_t(self, runner, pm1):
        res = runner.invoke(cli, ["bound-conc", pm1, "--t", "-1"])
        assert res.exit_code == 3 and "nonnegative" in res.output

    def test_bad_file(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert runner.invoke(cli, ["bound-conc", str(bad), "--t", "1"]).exit_code == 2
        bad.write_text(json.dumps({"atoms": [["0", "1/3"]]}))
        assert runner.invoke(cli, ["bound-conc", str(bad), "--t", "1"]).exit_code == 2
        assert runner.invoke(cli, ["bound-conc", str(tmp_path / "missing.json"), "--t", "1"]).exit_code == 2

    def test_bad_t(self, runner, pm1):
        assert runner.invoke(cli, ["bound-conc", pm1, "--t", "abc"]).exit_code == 2

    def test_out(self, runner, pm1, tmp_path):
        target = tmp_path / "r.json"
        res = runner.invoke(cli, ["bound-conc", pm1, "--t", "1", "--out", str(target)])
        assert res.exit_code == 0 and res.stdout == ""
        assert json.loads(target.read_text())["chain"][0]["value"] == "1/2"


class TestBoundTV:
    def test_report(self, runner, tmp_path):
        path = tmp_path / "b.json"
        path.write_text(json.dumps({"offset": 0, "weights": ["1/2", "1/2"], "mode": "exact"}))
        res = runner.invoke(cli, ["bound-tv", str(path), str(path), str(path)])
        assert res.exit_code == 0
        chain = {lk["label"]: lk for lk in json.loads(res.stdout)["chain"]}
        assert chain["d_TV(S,1+S)"]["value"] == "3/8"
        assert float(chain["new"]["value"]) <= float(chain["barbour-xia"]["value"])

    def test_parse_error(self, runner, tmp_path):
        path = tmp_path / "b.json"
        path.write_text(json.dumps({"offset": 0, "weights": ["1/2", "1/3"]}))
        assert runner.invoke(cli, ["bound-tv", str(path)]).exit_code == 2


class TestDist:
    def test_radc(self, runner):
        res = runner.invoke(cli, ["dist", "radc", "2"])
        d = json.loads(res.stdout)
        assert d["offset"] == -2
        assert [w for w in d["weights"] if w != "0/1"] == ["1/4", "1/2", "1/4"]

    def test_empty_stpc(self, runner):
        d = json.loads(runner.invoke(cli, ["dist", "stpc"]).stdout)
        assert d == {"mode": "exact", "offset": 0, "weights": ["1/1"]}

    def test_sympois(self, runner):
        res = runner.invoke(cli, ["dist", "sympois", "1", "--tail", "1e-12"])
        P = LatticePMF.from_json(res.stdout)
        assert P[0] == pytest.approx(0.4657596075936404, abs=1e-15)
        assert all(P[k] == P[-k] for k in P.support)
        assert P == sympois_truncated(1.0, 1e-12)

    @pytest.mark.parametrize(
        "args",
        [["stpc", "1/2", "1/3"], ["berc", "1/5", "2/3", "1"], ["radc", "5"], ["binom", "4", "1/3"], ["sympois", "2.5"]],
    )
    def test_round_trip_and_determinism(self, runner, args):
        first = runner.invoke(cli, ["dist", *args]).stdout
        assert first == runner.invoke(cli, ["dist", *args]).stdout
        P = LatticePMF.from_json(first)
        assert json.loads(first) == json.loads(runner.invoke(cli, ["dist", *args]).stdout)
        assert P.offset == json.loads(first)["offset"]

    def test_csv(self, runner):
        rows = list(csv.reader(io.StringIO(runner.invoke(cli, ["dist", "stpc", "1/2", "--format", "csv"]).stdout)))
        assert rows == [["k", "mass"], ["-1", "1/4"], ["0", "1/2"], ["1", "1/4"]]

    @pytest.mark.parametrize("args", [["stpc", "3/2"], ["radc", "-1"], ["binom", "3", "2"], ["sympois", "-1"], ["radc", "1/2"]])
    def test_domain_errors(self, runner, args):
        assert runner.invoke(cli, ["dist", *args]).exit_code == 3

    @pytest.mark.parametrize("args", [["radc"], ["binom", "3"], ["stpc", "x"], ["gamma", "1"]])
    def test_usage_errors(self, runner, args):
        assert runner.invoke(cli, ["dist", *args]).exit_code == 2


class TestTableG:
    def test_rows(self, runner):
        res = runner.invoke(cli, ["table-g", "--lambda-min", "0", "--lambda-max", "3", "--step", "1/4"])
        assert res.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(res.stdout)))
        assert len(rows) == 13
        assert rows[0]["G"] == "1"
        one = next(r for r in rows if float(r["lambda"]) == 1.0)
        assert float(one["G"]) == pytest.approx(0.67367, abs=1e-5)
        cols = {c: [float(r[c]) for r in rows] for c in rows[0]}
        for c in ("G", "bound_sqrt", "bound_quarter", "bound_h"):
            assert all(a > b for a, b in zip(cols[c], cols[c][1:]))
        for r in rows[1:]:
            g = float(r["G"])
            assert g < float(r["bound_sqrt"]) and g < float(r["bound_quarter"]) and g < float(r["bound_h"])

    def test_json(self, runner):
        res = runner.invoke(cli, ["table-g", "--lambda-min", "1", "--lambda-max", "2", "--step", "1", "--format", "json"])
        data = json.loads(res.stdout)
        assert [d["lambda"] for d in data] == ["1", "2"]

    @pytest.mark.parametrize(
        "args", [["--lambda-min", "2", "--lambda-max", "1"], ["--lambda-min", "-1"], ["--step", "0"], ["--step", "-1/2"]]
    )
    def test_bad_range(self, runner, args):
        assert runner.invoke(cli, ["table-g", *args]).exit_code == 3

    def test_float_format(self, runner):
        out = runner.invoke(cli, ["table-g", "--lambda-min", "0.1", "--lambda-max", "0.2", "--step", "0.1"]).stdout
        first = out.splitlines()[1].split(",")
        assert first[0] == "0.10000000000000001"
        assert float(first[1]) == g_value(0.1).value


class TestVerify:
    def test_small_kanter_grid(self, runner):
        res = runner.invoke(cli, ["verify", "kanter", "--grid-step", "1/4", "--max-n", "2"])
        assert res.exit_code == 0
        report = json.loads(res.stdout)
        grid = next(r for r in report if r["name"] == "kanter_grid")
        assert grid["passed"] and grid["details"]["vectors"] <= 25
        assert set(report[0]) >= {"name", "passed", "margin", "witnesses", "runtime_ms"}

    def test_counterexamples(self, runner):
        res = runner.invoke(cli, ["verify", "counterexamples", "--no-timing"])
        assert res.exit_code == 0
        report = json.loads(res.stdout)
        schur = next(r for r in report if r["name"] == "schur_counterexample")
        assert schur["witnesses"] == [["99/100", "1/1", "49/50"]]
        assert res.stdout == runner.invoke(cli, ["verify", "counterexamples", "--no-timing"]).stdout

    def test_unknown_suite(self, runner):
        assert runner.invoke(cli, ["verify", "everything"]).exit_code == 2

    def test_bad_overrides(self, runner):
        assert runner.invoke(cli, ["verify", "kanter", "--grid-step", "2"]).exit_code == 3
        assert runner.invoke(cli, ["verify", "kanter", "--max-n", "0"]).exit_code == 3
        assert runner.invoke(cli, ["verify", "analytic", "--tol", "0"]).exit_code == 3
        assert runner.invoke(cli, ["verify", "kanter", "--grid-step", "x"]).exit_code == 2

    def test_failure_exit_code(self, runner, monkeypatch):
        from kanterbound import cli as cli_mod
        from kanterbound.verify import VerifyOutcome

        monkeypatch.setattr(cli_mod, "run_suite", lambda *a, **k: [VerifyOutcome("broken", False, F(-1))])
        res = runner.invoke(cli, ["verify", "kanter"])
        assert res.exit_code == 1
        assert json.loads(res.stdout)[0]["margin"] == "-1/1"

    def test_csv(self, runner):
        res = runner.invoke(cli, ["verify", "identities", "--format", "csv"])
        rows = list(csv.reader(io.StringIO(res.stdout)))
        assert rows[0] == ["name", "passed", "margin", "runtime_ms"] and len(rows) > 3

    def test_all(self, runner):
        res = runner.invoke(cli, ["verify", "all"])
        assert res.exit_code == 0, res.stdout


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "kanterbound", "dist", "radc", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["offset"] == -1
