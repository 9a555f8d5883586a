import json
import math
from importlib import resources

import jsonschema
import pytest

from johnson_pst.cli import main, parse_time

SCHEMA = json.loads(resources.files("johnson_pst").joinpath("report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


@pytest.mark.parametrize("text,value,label", [
    ("pi/2", math.pi / 2, "pi/2"),
    ("3pi/4", 3 * math.pi / 4, "3*pi/4"),
    ("3*pi/4", 3 * math.pi / 4, "3*pi/4"),
    ("2pi", 2 * math.pi, "2*pi"),
    ("pi", math.pi, "pi"),
    ("0", 0.0, "0"),
    ("0.25", 0.25, "1/4"),
    ("1/3", 1 / 3, "1/3"),
    ("1/2 pi", math.pi / 2, "pi/2"),
])
def test_parse_time(text, value, label):
    assert parse_time(text) == (value, label)


def test_scheme_info(capsys):
    code, r = run_json(capsys, "scheme-info", "--n", "6", "--k", "3")
    assert code == 0
    res = r["results"]
    assert res["v"] == 20 and res["valencies"] == [1, 9, 9, 1]
    assert res["involution_classes"] == [3]
    code, r = run_json(capsys, "scheme-info", "--n", "4", "--k", "2")
    assert r["results"]["v"] == 6 and len(r["results"]["classes"]) == 3
    code, r = run_json(capsys, "scheme-info", "--n", "2", "--k", "1")
    assert r["results"]["P"] == [[1, 1], [1, -1]]


def test_scheme_info_invalid(capsys):
    code, out, err = run(capsys, "scheme-info", "--n", "5", "--k", "3")
    assert code == 2 and "invalid parameters" in err


def test_pst_kneser(capsys):
    code, r = run_json(capsys, "pst", "--n", "12", "--k", "6", "--classes", "0")
    v = r["results"]["verdict"]
    assert code == 0 and v["has_pst"] and v["time_label"] == "pi/2"
    assert r["results"]["oracle"]["amplitude_at_time"]["modulus"] == pytest.approx(1, abs=1e-9)


def test_pst_union_yes(capsys):
    code, r = run_json(capsys, "pst", "--n", "6", "--k", "3", "--classes", "1,2")
    assert code == 0 and r["results"]["verdict"]["has_pst"]
    assert r["results"]["oracle"]["pst_found"]


def test_pst_union_no(capsys):
    code, r = run_json(capsys, "pst", "--n", "6", "--k", "3", "--classes", "0,1")
    v, o = r["results"]["verdict"], r["results"]["oracle"]
    assert code == 0 and v["obstruction"]["tag"] == "ORD2_FAIL"
    assert o["amplitude_at_pi_over_2"]["re"] == pytest.approx(0.4, abs=1e-9)
    assert o["scan"]["max_modulus"] < 0.999 and not o["pst_found"]


def test_pst_inconclusive_exit_code(capsys):
    code, r = run_json(capsys, "pst", "--n", "8", "--k", "4", "--classes", "0,1,3")
    assert code == 3
    assert r["results"]["verdict"]["obstruction"]["tag"] == "INCONCLUSIVE_PASS"
    assert r["results"]["oracle"]["pst_found"]


def test_pst_not_2k(capsys):
    code, r = run_json(capsys, "pst", "--n", "7", "--k", "3", "--classes", "0")
    assert code == 0 and r["results"]["verdict"]["obstruction"]["tag"] == "NOT_2K"
    assert r["results"]["oracle"]["scan"]["max_modulus"] < 0.999


@pytest.mark.parametrize("classes", ["3", "a,b", "", "-1"])
def test_pst_bad_classes(capsys, classes):
    code, _, err = run(capsys, "pst", "--n", "6", "--k", "3", "--classes", classes)
    assert code == 2 and err


def test_survey(capsys, tmp_path):
    out = tmp_path / "s.csv"
    code, r = run_json(capsys, "survey", "--kmax", "3", "--out", str(out))
    rows = r["results"]["rows"]
    assert code == 0 and len(rows) == 5
    assert [(x["k"], x["i"], x["has_pst"]) for x in rows][:2] == [(2, 0, "yes"), (2, 1, "no")]
    assert rows[1]["obstruction"] == "DEGREE_EVEN"
    lines = out.read_text().splitlines()
    assert lines[0] == "k,i,binom_k_i_parity,binom_k1_i_parity,has_pst,obstruction,alpha,ord2_alpha"
    assert lines[3] == "3,0,odd,odd,yes,,2,1"
    assert len(lines) == 6


def test_survey_rows_follow_main_theorem(capsys):
    code, r = run_json(capsys, "survey", "--kmax", "12")
    for row in r["results"]["rows"]:
        assert (row["has_pst"] == "yes") == (row["i"] == 0)


def test_survey_csv_stdout(capsys):
    code, out, _ = run(capsys, "survey", "--kmax", "2", "--csv")
    assert out.splitlines()[1:] == ["2,0,odd,odd,yes,,2,1", "2,1,even,odd,no,DEGREE_EVEN,2,1"]


def test_verify_small(capsys):
    code, r = run_json(capsys, "verify", "--kmax", "3")
    assert code == 0 and r["results"]["passed"]
    assert r["results"]["lemma_checks_run"]["c"] >= 1


def test_verify_corrupt(capsys):
    code, r = run_json(capsys, "verify", "--kmax", "5", "--corrupt")
    assert code == 1
    assert {"k": 3, "i": 1, "check": "a"} in r["results"]["failures"]


def test_verify_corrupt_without_target(capsys):
    code, _, err = run(capsys, "verify", "--kmax", "2", "--corrupt")
    assert code == 2


def test_walk(capsys):
    code, r = run_json(capsys, "walk", "--n", "6", "--k", "3", "--classes", "0",
                       "--time", "pi/2", "--from", "1,2,3", "--to", "4,5,6")
    assert code == 0 and r["results"]["amplitude"]["modulus"] == pytest.approx(1, abs=1e-12)
    code, r = run_json(capsys, "walk", "--n", "6", "--k", "3", "--classes", "1",
                       "--time", "0", "--from", "1,2,3", "--to", "3,2,1")
    assert r["results"]["amplitude"] == {"re": 1.0, "im": 0.0, "modulus": 1.0}
    code, r = run_json(capsys, "walk", "--n", "6", "--k", "3", "--classes", "1,2",
                       "--time", "pi/2", "--from", "1,2,3", "--to", "4,5,6")
    assert r["results"]["amplitude"]["re"] == pytest.approx(-1, abs=1e-12)
    assert r["results"]["ranks"] == [1, 20]


@pytest.mark.parametrize("vertex", ["1,2", "1,2,7", "1,1,2", "x"])
def test_walk_bad_vertex(capsys, vertex):
    code, _, err = run(capsys, "walk", "--n", "6", "--k", "3", "--classes", "0",
                       "--from", vertex, "--to", "4,5,6")
    assert code == 2 and "invalid vertex" in err


def test_walk_trace(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code, r = run_json(capsys, "walk", "--n", "4", "--k", "2", "--classes", "0", "--from", "1,2",
                       "--to", "3,4", "--trace", "--tmax", "pi", "--step", "0.5", "--out", str(out))
    lines = out.read_text().splitlines()
    assert lines[0] == "t,re,im,modulus" and len(lines) == 8   # t = 0, 0.5, ..., 3.0


@pytest.mark.parametrize("argv", [
    ["scheme-info", "--n", "8", "--k", "4"],
    ["pst", "--n", "6", "--k", "3", "--classes", "0,2"],
    ["survey", "--kmax", "6"],
    ["walk", "--n", "8", "--k", "4", "--classes", "1,3", "--time", "3pi/7", "--from", "1,2,3,4", "--to", "1,5,6,7"],
])
def test_determinism(capsys, argv):
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    assert json.dumps(a["results"], sort_keys=True) == json.dumps(b["results"], sort_keys=True)
    assert a["parameters"] == b["parameters"]


def test_module_entry_point():
    import subprocess
    import sys
    p = subprocess.run([sys.executable, "-m", "johnson_pst", "survey", "--kmax", "2", "--csv"],
                       capture_output=True, text=True)
    assert p.returncode == 0 and p.stdout.startswith("k,i,")
