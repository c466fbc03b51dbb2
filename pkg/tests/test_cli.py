import json
import subprocess
import sys
from pathlib import Path

import pytest

from weylsym import __version__
from weylsym.cli import SUITES, bench, dumps, main, run_suite, table
from weylsym.errors import ContractViolation, UnknownSuite

GOLDEN = Path(__file__).parent / "golden"


def statuses(report):
    return [i["status"] for s in report["suites"] for i in s["items"]]


def test_pairing_report_k3():
    r = run_suite(3, "pairing", 11)
    items = r["suites"][0]["items"]
    assert len(items) == 1
    assert items[0]["status"] == "pass" and items[0]["lhs"] == items[0]["rhs"] == "12"
    assert r["tool_version"] == __version__ and r["seed"] == 11


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite(2, "bogus", 0)


def test_small_k_rejected():
    with pytest.raises(ContractViolation):
        run_suite(1, "pairing", 0)
    assert statuses(run_suite(1, "generators", 0))


def test_upq_k4():
    r = run_suite(4, "upq", 7)
    agree = [i for i in r["suites"][0]["items"] if i["item_id"].startswith("u.p")]
    assert len(agree) == 35 and all(i["status"] == "pass" for i in agree)


def test_out_of_range_is_skipped():
    r = run_suite(5, "factorization", 0)
    assert statuses(r) == ["skipped"]


@pytest.mark.parametrize("name", ["report_k2_all_seed0.json", "report_k3_upq_seed7.json"])
def test_golden_reports(name):
    k = int(name.split("_k")[1][0])
    suite = name.split("_")[2]
    seed = int(name.split("seed")[1].split(".")[0])
    assert dumps(run_suite(k, suite, seed)) == (GOLDEN / name).read_text()


def test_reports_byte_identical_and_job_independent():
    a = dumps(run_suite(3, "all", 5))
    assert a == dumps(run_suite(3, "all", 5))
    assert a == dumps(run_suite(3, "all", 5, jobs=2))


def test_all_contains_every_suite_once():
    r = run_suite(2, "all", 0)
    assert [s["name"] for s in r["suites"]] == list(SUITES)
    ids = [(i["suite"], i["item_id"]) for s in r["suites"] for i in s["items"]]
    assert len(ids) == len(set(ids))
    for s in r["suites"]:
        single = run_suite(2, s["name"], 0)["suites"][0]["items"]
        assert single == s["items"]


def test_no_failures_gate(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--k", "2", "--suite", "all", "--seed", "0", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["summary"]["fail"] == 0
    assert data["observations"]


def test_timings_flag(capsys):
    assert main(["verify", "--k", "2", "--suite", "pairing", "--timings"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert isinstance(data["suites"][0]["items"][0]["wall_time_ms"], float)


def test_seed_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("WEYLSYM_SEED", "42")
    main(["verify", "--k", "2", "--suite", "pairing"])
    assert json.loads(capsys.readouterr().out)["seed"] == 42


def test_bad_suite_exit_code(capsys):
    assert main(["verify", "--k", "2", "--suite", "bogus"]) == 2
    assert "unknown suite" in capsys.readouterr().err


def test_tables():
    assert [r["value"] for r in table("M", 2, dmax=2)] == ["1", "1*s1", "1*s1^2 + -1*s2"]
    assert len(table("generators", 2)) == 6
    rows = table("u", 3, pmax=3, qmax=2)
    assert {(r["p"], r["value"]) for r in rows if r["q"] == 0} >= {(1, "1*s1"), (0, "3")}
    with pytest.raises(ContractViolation):
        table("u", 3, pmax=-1)


def test_table_cli(capsys):
    assert main(["table", "--kind", "M", "--k", "2", "--dmax", "2"]) == 0
    assert capsys.readouterr().out.splitlines()[-1] == "M[2] = 1*s1^2 + -1*s2"


def test_bench():
    r = bench("pairing", 5, reps=3)
    assert r["value"] == 34560 and r["median_ms"] >= 0
    assert "result_terms" in bench("weyl_mul", 3, size=2, reps=2)
    assert "p90_ms" in bench("pushforward", 3, size=2, reps=2)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "weylsym", "verify", "--k", "2", "--suite", "pairing"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["suites"][0]["items"][0]["lhs"] == "2"
