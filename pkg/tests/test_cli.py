import json

import pytest

from cogindep.cli import main
from cogindep.core import make_mass
from cogindep.experiments import EXAMPLE_FRAME, OMEGA, W1, W12, example_m1, example_m2
from cogindep.io import read_dataset, read_record, write_mass


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    write_mass("m1.json", example_m1())
    write_mass("m2.json", example_m2())
    return tmp_path


def single(path):
    return read_record(path)[1][0]


def test_generate_writes_two_sources(workdir):
    assert main(["generate", "--frame-size", "5", "--n", "100", "--seed", "42", "--out", "a"]) == 0
    s1, s2 = read_dataset("a_s1.json"), read_dataset("a_s2.json")
    assert len(s1) == len(s2) == 100
    first = (workdir / "a_s1.json").read_bytes()
    assert main(["generate", "--seed", "42", "--out", "a"]) == 0
    assert (workdir / "a_s1.json").read_bytes() == first


@pytest.mark.parametrize(
    "scenario, check",
    [
        ("independent", lambda d: d["I_d"] > 0.5),
        ("positive", lambda d: max(d["betp"], key=d["betp"].get) == "P"),
        ("negative", lambda d: max(d["betp"], key=d["betp"].get) == "Pbar"),
    ],
)
def test_analyze_regimes(workdir, scenario, check):
    assert main(["generate", "--scenario", scenario, "--seed", "0", "--out", scenario]) == 0
    args = ["analyze", f"{scenario}_s1.json", f"{scenario}_s2.json", "--format", "json", "--out", "r.json"]
    assert main(args) == 0
    report = json.loads((workdir / "r.json").read_text())
    assert all(check(d) for d in report["directions"])


def test_analyze_text_and_csv(workdir, capsys):
    main(["generate", "--n", "30", "--out", "d"])
    capsys.readouterr()
    assert main(["analyze", "d_s1.json", "d_s2.json"]) == 0
    assert "I_d(S1,S2)=" in capsys.readouterr().out
    assert main(["analyze", "d_s1.json", "d_s2.json", "--format", "csv", "--alpha-policy", "cluster-size"]) == 0
    assert capsys.readouterr().out.startswith("source,other,I_d")


def test_adjust_worked_example(workdir):
    assert main(["adjust", "m1.json", "--I", "0.26", "--P", "0.56", "--N", "0.18", "--out", "a.json"]) == 0
    expected = make_mass(EXAMPLE_FRAME, {0: 0.18, W1: 0.052, W12: 0.13, OMEGA: 0.638})
    assert single("a.json").max_abs_diff(expected) <= 1e-12


def test_adjust_swept_parameters(workdir):
    assert main(["adjust", "m1.json", "--alpha", "0.95", "--beta", "0.95", "--gamma", "0.05", "--out", "a.json"]) == 0
    expected = make_mass(EXAMPLE_FRAME, {0: 0.045125, W1: 0.01, W12: 0.025, OMEGA: 0.919875})
    assert single("a.json").max_abs_diff(expected) <= 5e-7


def test_adjust_identity(workdir):
    assert main(["adjust", "m1.json", "--I", "1", "--out", "a.json"]) == 0
    assert single("a.json") == example_m1()


def test_combine_rules(workdir):
    assert main(["combine", "m1.json", "m2.json", "--out", "c.json"]) == 0
    c = single("c.json")
    assert (c[0], c[W1], c[W12]) == pytest.approx((0.02, 0.18, 0.63))
    write_mass("v.json", make_mass(EXAMPLE_FRAME, {OMEGA: 1.0}))
    assert main(["combine", "m1.json", "v.json", "--out", "c.json"]) == 0
    assert single("c.json").isclose(example_m1())
    assert main(["combine", "m1.json", "m1.json", "--rule", "mean", "--out", "c.json"]) == 0
    assert single("c.json") == example_m1()


def test_sweep_csv(workdir, capsys):
    assert main(["sweep", "--grid", "0:1:0.5", "--alpha", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1 + 9
    for line in lines[1:]:
        _, b, g, empty = map(float, line.split(",")[:4])
        assert empty == pytest.approx(b * g, abs=1e-12)


def test_reproduce_exit_codes(workdir):
    assert main(["reproduce", "--table", "2"]) == 0
    assert main(["reproduce", "--figure", "1", "--format", "csv", "--out", "f.csv"]) == 0
    assert (workdir / "f.csv").read_text().startswith("alpha,beta,gamma")
    # The reference tables 3 and 4 contain misprinted cells; a mismatch exits 1.
    assert main(["reproduce", "--table", "3"]) == 1
    assert main(["reproduce", "--table", "4"]) == 1


def test_error_exit_codes(workdir):
    with pytest.raises(SystemExit) as exc:
        main(["adjust", "m1.json", "--I", "1.5"])
    assert exc.value.code == 2
    assert main(["adjust", "m1.json", "--I", "0.5", "--P", "0.2"]) == 2
    assert main(["adjust", "m1.json"]) == 2
    assert main(["sweep", "--grid", "0:2:0.5"]) == 2
    assert main(["generate", "--contradiction", "0,1,2,3,4"]) == 2
    assert main(["analyze", "missing.json", "m1.json"]) == 3
    main(["generate", "--n", "10", "--out", "d"])
    main(["generate", "--n", "12", "--out", "e"])
    assert main(["analyze", "d_s1.json", "e_s2.json"]) == 4
    (workdir / "bad.json").write_text("{}")
    assert main(["combine", "m1.json", "bad.json"]) == 4
    assert main(["combine", "m1.json", "m2.json", "--out", str(workdir / "no" / "where.json")]) == 3
