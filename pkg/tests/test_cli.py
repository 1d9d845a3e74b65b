import csv
import json

import pytest
from click.testing import CliRunner

from vfive.cli import main
from vfive.core import UnitVector4, evaluate, parse_circuit, trace_distance


@pytest.fixture
def run():
    runner = CliRunner()
    return lambda *args: runner.invoke(main, list(args))


def _csv(output):
    lines = output.splitlines()
    assert lines[0] == "# vfive-report v1"
    body = [ln for ln in lines if not ln.startswith("#")]
    return list(csv.DictReader(body))


def test_exact_synth(run):
    r = run("exact-synth", "--quaternion", "1,2,0,0")
    assert r.exit_code == 0
    assert r.output.splitlines()[0] == "V1"
    assert json.loads(r.output.splitlines()[1])["v_count"] == 1


def test_exact_synth_bad_input(run):
    assert run("exact-synth", "--quaternion", "1,1,0,0").exit_code == 2
    assert run("exact-synth", "--quaternion", "1,x,0,0").exit_code == 2


@pytest.mark.parametrize("method", ["rand", "direct"])
def test_approx_json(run, method):
    r = run("approx", "--rz", "0.7", "--eps", "1e-3", "--method", method, "--seed", "3")
    assert r.exit_code == 0, r.output
    out = json.loads(r.output)
    assert set(out) == {"circuit", "v_count", "distance", "level", "seed", "millis"}
    assert out["seed"] == 3
    d = trace_distance(evaluate(parse_circuit(out["circuit"])), UnitVector4.rz(0.7))
    assert d == out["distance"] < 1e-3


def test_approx_direct_on_grid_target(run):
    target = ",".join(repr(x) for x in evaluate(parse_circuit("V1")).as_tuple())
    r = run("approx", "--target", target, "--method", "direct", "--eps", "1e-3")
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["circuit"] == "V1"


def test_approx_unitary_rand(run):
    r = run("approx", "--target", "0.5,0.5,0.5,0.5", "--eps", "1e-3", "--seed", "1")
    assert r.exit_code == 0, r.output
    assert json.loads(r.output)["distance"] < 1e-3


def test_approx_errors(run):
    assert run("approx", "--rz", "0.3", "--eps", "0.5").exit_code == 2
    assert run("approx", "--rz", "0.3", "--eps", "0.5", "--method", "direct").exit_code == 2
    assert run("approx", "--target", "1,2", "--eps", "1e-3").exit_code == 2
    assert run("approx", "--eps", "1e-3").exit_code == 2
    r = run("approx", "--rz", "0.3", "--eps", "1e-4", "--method", "direct", "--max-table-entries", "5")
    assert r.exit_code == 4


def test_search_failure_exit_code(run, monkeypatch):
    import vfive.cli as cli
    from vfive.errors import SearchExhausted

    def boom(*a, **k):
        raise SearchExhausted("nothing")

    monkeypatch.setattr(cli, "direct_search", boom)
    assert run("approx", "--rz", "0.3", "--method", "direct").exit_code == 3


def test_bench(run):
    r = run("bench", "--count", "3", "--eps", "1e-3", "--method", "RA", "--method", "DS",
            "--method", "exact", "--seed", "5")
    assert r.exit_code == 0, r.output
    assert "# seed=5" in r.output
    rows = _csv(r.output)
    assert [row["method"] for row in rows] == ["DS", "RA", "exact"]
    assert all(row["failures"] == "0" for row in rows)


def test_conjecture(run):
    r = run("conjecture", "--L", "4", "--L", "6", "--delta", "4")
    assert r.exit_code == 0, r.output
    rows = _csv(r.output)
    assert rows[0]["grid_points"] == "568" and rows[0]["projection_points"] == "224"
    r = run("conjecture", "--L", "4", "--segment-angle", "0")
    assert _csv(r.output)[0]["grid_points"] == "55"
    assert run("conjecture", "--p", "7").exit_code == 2


def test_ladder_and_cost(run):
    r = run("ladder", "--trials", "1000", "--seed", "1", "--target-level", "2")
    assert r.exit_code == 0
    assert {row["policy"] for row in _csv(r.output)} == {"reuse", "discard"}
    r = run("cost")
    out = json.loads(r.output)
    assert out["success_path_cost"] == 5.35
    assert out["failure_then_success_cost"] == 22.75
    assert run("cost", "--success-prob", "2").exit_code == 2
