import io
import json

import pytest

from regstab.cli import EXIT_INPUT, EXIT_OK, EXIT_UNCERTIFIED, EXIT_VIOLATION, main
from regstab.report import AtLeast, Check, ReportDocument, compare


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "ci22": write(tmp_path, "ci22.ideal", "field Fp 32003\nvars x y\ngen x^2\ngen y^2\n"),
        "m2": write(tmp_path, "m2.ideal", "vars x y\ngen x\ngen y\n"),
        "nonprimary": write(tmp_path, "np.ideal", "vars x y z\ngen x^2\ngen x*y\n"),
        "bad": write(tmp_path, "bad.ideal", "vars x y\ngen x^2 + y^3\n"),
        "one": write(tmp_path, "one.ideal", "vars x\ngen x^3\n"),
    }


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_analyze_ci22(files):
    code, text = run(["analyze", files["ci22"], "--json"])
    assert code == EXIT_OK
    doc = json.loads(text)
    r = doc["result"]
    assert (r["d"], r["t0"], r["b"], r["c"], r["stab"]) == (2, 1, 1, 1, 1)
    assert doc["verdict"] == "pass"
    assert {"name", "anchor", "lhs", "rhs", "relation", "passed", "certified"} <= set(doc["checks"][0])


def test_analyze_m2_text(files):
    code, text = run(["analyze", files["m2"]])
    assert code == EXIT_OK
    assert "b = 0" in text and "Stab = 1" in text and "d = 1" in text


def test_analyze_nonprimary_exit_1(files, capsys):
    code, _ = run(["analyze", files["nonprimary"]])
    assert code == EXIT_INPUT
    assert "y, z" in capsys.readouterr().err


def test_parse_error_exit_1(files, capsys):
    code, _ = run(["analyze", files["bad"]])
    assert code == EXIT_INPUT
    assert "{2, 3}" in capsys.readouterr().err


def test_missing_file_exit_1(tmp_path):
    assert run(["analyze", str(tmp_path / "nope.ideal")])[0] == EXIT_INPUT


CUBIC = (
    "vars x y z\ngen x^3\ngen y^3\ngen z^3\n"
    "gen 25422*x^3 + 29170*x^2*y + 28135*x*y^2 + 8475*y^3 + 22124*x^2*z + 6134*x*y*z"
    " + 6214*y^2*z + 20379*x*z^2 + 23093*y*z^2 + 4505*z^3\n"
)


def test_strict_uncertified_exit_3(tmp_path):
    # f = 2,2,2,1,...: a horizon ending right at the drop cannot certify b
    f = write(tmp_path, "late.ideal", CUBIC)
    code, text = run(["analyze", f, "--tmax", "4", "--window", "2", "--json"])
    doc = json.loads(text)
    assert doc["result"]["certified"] is False
    assert doc["verdict"] == "inconclusive" and code == EXIT_OK
    assert run(["analyze", f, "--tmax", "4", "--window", "2", "--strict"])[0] == EXIT_UNCERTIFIED
    code, text = run(["analyze", f, "--json"])
    assert code == EXIT_OK and json.loads(text)["result"]["stab"] == 4


def test_exit_code_contract_on_checks():
    from regstab.cli import _exit_code

    ok = compare("a", "x", 1, "<=", 2)
    bad = compare("b", "x", 3, "<=", 2)
    unc = compare("c", "x", AtLeast(3), "<=", 2)
    assert _exit_code([ok], False) == EXIT_OK
    assert _exit_code([ok, bad], False) == EXIT_VIOLATION
    assert _exit_code([ok, unc], False) == EXIT_OK
    assert _exit_code([ok, unc], True) == EXIT_UNCERTIFIED


def test_analyze_csv(files, tmp_path):
    out = tmp_path / "t.csv"
    assert run(["analyze", files["ci22"], "--csv", str(out)])[0] == EXIT_OK
    raw = out.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "t,reg,f" and lines[1] == "1,3,1"


def test_strand_commands(files, tmp_path):
    code, text = run(["strand", files["ci22"], "--mu", "1", "--json"])
    assert code == EXIT_OK
    doc = json.loads(text)
    assert doc["result"]["simple-stab"]["reg_B"] == 0
    assert doc["result"]["simple-stab"]["cohomology"]["end_h1"] == "-inf"
    code, text = run(["strand", files["ci22"], "--mu", "0"])
    assert code == EXIT_OK and "compcoh" in text
    out = tmp_path / "b.csv"
    run(["strand", files["ci22"], "--mu", "0", "--csv", str(out)])
    assert out.read_text().splitlines()[0] == "j,t,beta"


def test_strand_mu_out_of_range(files, capsys):
    code, _ = run(["strand", files["ci22"], "--mu", "-5"])
    assert code == EXIT_INPUT
    assert "mu=-5" in capsys.readouterr().err


def test_strand_needs_two_variables(files):
    assert run(["strand", files["one"]])[0] == EXIT_INPUT


def test_strand_cutoff_error_names_horizon(files, capsys):
    code, _ = run(["strand", files["ci22"], "--tmax", "3", "--cutoff", "3"])
    assert code == EXIT_INPUT
    assert "T >= 5" in capsys.readouterr().err


def test_seed_from_environment(files, monkeypatch):
    monkeypatch.setenv("REGSTAB_SEED", "17")
    doc = json.loads(run(["strand", files["ci22"], "--json"])[1])
    assert doc["seed"] == 17
    monkeypatch.setenv("REGSTAB_SEED", "x")
    assert run(["strand", files["ci22"]])[0] == EXIT_INPUT


def test_suite_vacuous():
    code, text = run(["suite", "--count", "0"])
    assert code == EXIT_OK and "0 pass" in text


def test_suite_caps():
    assert run(["suite", "--n", "5"])[0] == EXIT_INPUT
    assert run(["suite", "--max-deg", "7"])[0] == EXIT_INPUT
    assert run(["suite", "--count", "501"])[0] == EXIT_INPUT


def test_suite_deterministic():
    args = ["suite", "--n", "2", "--max-deg", "3", "--count", "4", "--seed", "3", "--json"]
    a, b = run(args), run(args)
    assert a == b and a[0] == EXIT_OK
    doc = json.loads(a[1])
    assert doc["result"]["tally"]["pass"] + doc["result"]["tally"]["inconclusive"] == 4


def test_suite_jobs_same_result():
    base = ["suite", "--n", "2", "--max-deg", "3", "--count", "3", "--seed", "8", "--json"]
    assert run(base) == run(base + ["--jobs", "2"])


def test_gvt_check(files, tmp_path):
    assert run(["gvt-check", files["ci22"]])[0] == EXIT_OK
    f = write(tmp_path, "ci33.ideal", "vars x y z\ngen x^3\ngen y^3 + x^2*y\ngen z^3 - x*y*z\n")
    code, text = run(["gvt-check", f, "--tmax", "3", "--json"])
    assert code == EXIT_OK and json.loads(text)["verdict"] == "pass"
    assert run(["gvt-check", files["m2"].replace("m2", "m2")])[0] == EXIT_OK
    f2 = write(tmp_path, "mixed.ideal", "vars x y\ngen x^2\ngen y^3\n")
    assert run(["gvt-check", f2])[0] == EXIT_INPUT


def test_report_round_trip(files):
    doc = json.loads(run(["analyze", files["ci22"], "--json"])[1])
    again = ReportDocument.loads(json.dumps(doc))
    assert json.loads(again.dumps()) == doc
    chk = Check("x", "a", AtLeast(4), float("-inf"), "<=", False, False)
    d2 = ReportDocument("t", {"v": float("-inf"), "w": AtLeast(3)}, [chk])
    back = ReportDocument.loads(d2.dumps())
    assert back.result == {"v": float("-inf"), "w": AtLeast(3)}
    assert back.checks[0] == chk
