import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from twoplectic.cli import main
from twoplectic.gerbe_sections import SectionElement, WeakSymmetryTriple
from twoplectic.plectic import HamiltonianPair
from twoplectic.scenario import ScenarioError, bundled_scenarios, load_scenario_text, parse_scenario
from twoplectic.suites import run_suite

from conftest import R3

GOOD = """\
name: tiny
base_vars: [x, y, z]
omega: dx^dy^dz
chi: x*dy^dz
hamiltonian_forms: [x*dy]
fixtures:
  f: {function: x*y}
  a: {alpha: y*dz, X: d/dx}
samples: 3
degree_bound: 2
"""


def run(*args):
    return CliRunner().invoke(main, list(args))


def write(tmp_path, text, name="s.scn"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_bundled_scenarios_load():
    names = [p.stem for p in bundled_scenarios()]
    assert names == ["r3_line_bundle", "r3_plane_bundle", "r3_volume"]
    for p in bundled_scenarios():
        parse_scenario(p)


def test_scenario_contents():
    sc = load_scenario_text(GOOD)
    assert sc.name == "tiny" and sc.mode == "exact" and sc.samples == 3
    assert sc.fixtures["f"] == R3.poly("x*y")
    assert isinstance(sc.fixtures["a"], HamiltonianPair)
    line = parse_scenario("r3_line_bundle")
    assert line.mode == "surrogate-bundle"
    assert isinstance(line.fixtures["s"], SectionElement)
    assert isinstance(line.fixtures["w"], WeakSymmetryTriple)
    plectic = load_scenario_text(GOOD.replace("chi: x*dy^dz\n", ""))
    assert plectic.mode == "plectic" and plectic.exact() is None


@pytest.mark.parametrize("old,new,line,column,message", [
    ("omega: dx^dy^dz", "omega: dx^dy^", 3, 14, "omega"),
    ("chi: x*dy^dz", "chi: y*dy^dz", 4, 6, "d chi != omega"),
    ("omega: dx^dy^dz", "omega: y*dx^dz^dw", 3, 16, "dw"),
    ("  a: {alpha: y*dz, X: d/dx}", "  a: {alpha: y*dz, X: d/dy}", 8, 6, "fixture"),
    ("samples: 3", "samples: -3", 9, 10, "samples"),
    ("samples: 3", "sample: 3", 9, 9, "unknown key"),
    ("base_vars: [x, y, z]", "base_vars: [x, y, x]", 2, 12, "duplicate"),
])
def test_errors_carry_positions(old, new, line, column, message):
    with pytest.raises(ScenarioError, match=message) as info:
        load_scenario_text(GOOD.replace(old, new), "bad.scn")
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"bad.scn:{line}:{column}:")


def test_yaml_syntax_error():
    with pytest.raises(ScenarioError, match="YAML") as info:
        load_scenario_text("name: [x\nomega: 1\n")
    assert info.value.line is not None


def test_missing_key():
    with pytest.raises(ScenarioError, match="omega"):
        load_scenario_text("base_vars: [x, y, z]\n")


def test_exit_pass(tmp_path):
    res = run("--scenario", write(tmp_path, GOOD), "--suite", "observables-axioms")
    assert res.exit_code == 0, res.output + res.stderr
    assert "overall: PASS" in res.output
    assert "kernel:" in res.output


def test_exit_fail_with_witness(tmp_path):
    res = run("--scenario", write(tmp_path, GOOD), "--suite", "observables-axioms", "--perturb", "l3-scaled-2",
              "--samples", "5", "--degree-bound", "3", "--format", "machine")
    assert res.exit_code == 1
    doc = json.loads(res.output)
    eq = [e for e in doc["suites"][0]["equations"] if e["equation"].startswith("jacobiator")][0]
    assert eq["status"] == "fail" and "tuple" in eq["witness"]


def test_exit_usage(tmp_path):
    bad = write(tmp_path, GOOD.replace("omega: dx^dy^dz", "omega: dx^dy^"))
    res = run("--scenario", bad)
    assert res.exit_code == 2
    assert ":3:14:" in res.stderr
    assert run("--scenario", str(tmp_path / "missing.scn")).exit_code == 2
    assert run("--suite", "quasi-iso").exit_code == 2
    assert run("--scenario", bad, "--suite", "nope").exit_code == 2


def test_exit_inconclusive():
    res = run("--scenario", "r3_plane_bundle", "--suite", "prequant-morphism")
    assert res.exit_code == 3
    assert "inconclusive" in res.output


def test_list_scenarios():
    res = run("--list-scenarios")
    assert res.exit_code == 0 and "r3_volume" in res.output.split()


def test_surrogate_mode_recorded():
    rep = run_suite(parse_scenario("r3_line_bundle"), "crossed-module", samples=2, degree_bound=2)
    assert rep.settings["mode"] == "surrogate-bundle"
    assert rep.status == "pass"


def test_machine_output_is_deterministic(tmp_path):
    path = write(tmp_path, GOOD)
    outs = [run("--scenario", path, "--suite", "all", "--seed", "7", "--format", "machine").output for _ in range(2)]
    assert outs[0] == outs[1]
    assert "time" not in outs[0] and "kernel" not in outs[0]
    other = run("--scenario", path, "--suite", "all", "--seed", "8", "--format", "machine").output
    assert other != outs[0]


def test_python_dash_m(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "twoplectic", "--scenario", write(tmp_path, GOOD),
                           "--suite", "exterior-laws", "--samples", "2"], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert "exterior-laws" in proc.stdout
