import json
import logging

import numpy as np
import pandas as pd
import pytest

import run_swarmlab
from swarmlab.benchmarks import benchmark_names
from swarmlab.potential import PotentialTrace


@pytest.fixture(autouse=True)
def _fresh_loggers():
    yield
    for name in ("SwarmLab", "swarmlab"):
        logging.getLogger(name).handlers.clear()


def _main(*argv):
    return run_swarmlab.main(list(argv))


# ---------------------------------------------------------------------------
# run
# ---------------------------------------------------------------------------

def test_run_sphere(capsys):
    assert _main("run", "--function", "sphere", "--dim", "3", "--variant", "classical", "--seed", "1") == 0
    out = capsys.readouterr().out
    assert "classification  G" in out
    assert "distance[3]" in out


def test_run_rosenbrock_one_dimension():
    assert _main("run", "--function", "rosenbrock", "--dim", "1") == 1


def test_run_griewank_with_mu(capsys):
    code = _main("run", "--function", "griewank", "--mu", "0.1", "--dim", "5",
                 "--variant", "social-only", "--seed", "7")
    assert code == 0
    label = [line.split()[-1] for line in capsys.readouterr().out.splitlines()
             if line.startswith("classification")]
    assert label[0] in {"G", "L", "O"}


def test_run_prints_full_precision(capsys):
    _main("run", "--function", "rastrigin", "--dim", "2", "--iters", "5", "--particles", "4", "--seed", "2")
    line = next(l for l in capsys.readouterr().out.splitlines() if l.startswith("f(p_glob)"))
    value = line.split()[-1]
    assert float(value) == float(repr(float(value)))


@pytest.mark.parametrize("argv", [
    ("run", "--function", "sphere", "--mu", "0.1", "--dim", "2"),
    ("run", "--function", "booth", "--dim", "2"),
    ("run", "--function", "griewank", "--mu", "abc", "--dim", "2"),
    ("run", "--function", "sphere", "--dim", "2", "--variant", "greedy"),
    ("run", "--function", "sphere", "--dim", "two"),
    ("run", "--function", "sphere", "--dim", "2", "--iters", "0"),
    ("run", "--function", "sphere", "--dim", "2", "--bounds", "5", "-5"),
    ("run", "--function", "sphere", "--dim", "2", "--variant", "classical", "--switch-at", "3"),
    ("run", "--function", "sphere", "--dim", "2", "--variant", "social-only", "--switch-at", "3"),
    (),
])
def test_configuration_errors(argv):
    assert _main(*argv) == 1


def test_run_writes_trace(tmp_path):
    out = tmp_path / "trace.csv"
    code = _main("run", "--function", "ackley", "--dim", "2", "--iters", "12", "--particles", "6",
                 "--trace-potential", "--out", str(out))
    assert code == 0
    trace = PotentialTrace.read_csv(out)
    assert len(trace) == 12 and trace.dimension == 2


def test_run_reproducible(capsys):
    argv = ("run", "--function", "schwefel", "--dim", "2", "--iters", "30", "--particles", "10", "--seed", "4")

    def results():
        # Log lines carry a wall-clock timestamp; compare the printed results only.
        return [l for l in capsys.readouterr().out.splitlines() if not l.startswith("[")]

    _main(*argv)
    first = results()
    _main(*argv)
    assert results() == first
    assert any(l.startswith("p_glob") for l in first)


# ---------------------------------------------------------------------------
# experiment / sweep
# ---------------------------------------------------------------------------

def test_experiment_missing_plan(capsys):
    assert _main("experiment", "--plan", "missing.json") == 3
    assert "missing.json" in capsys.readouterr().out


def test_experiment_plan_file(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({
        "n_particles": 8, "maxiter": 15, "n_runs": 2,
        "cells": [{"function": "sphere", "dimension": 2, "variant": "classical"},
                  {"function": "rastrigin", "dimension": 1, "variant": "hybrid"}],
    }))
    assert _main("experiment", "--plan", str(plan), "--out-dir", str(tmp_path / "out")) == 0
    df = pd.read_csv(tmp_path / "out" / "report.csv")
    assert len(df) == 2
    doc = json.loads((tmp_path / "out" / "report.json").read_text())
    assert doc["metadata"]["generator"] == "numpy.PCG64"


def test_experiment_bad_plan_schema(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"cells": [], "extra": 1}))
    assert _main("experiment", "--plan", str(plan), "--out-dir", str(tmp_path)) == 1


def test_experiment_flags_override_plan_cells(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({
        "n_particles": 8, "maxiter": 15, "n_runs": 2, "base_seed": 0,
        "cells": [{"function": "sphere", "dimension": 2, "variant": "classical"},
                  {"function": "ackley", "dimension": 2, "variant": "social-only", "n_runs": 3}],
    }))
    code = _main("experiment", "--plan", str(plan), "--runs", "1", "--base-seed", "5",
                 "--out-dir", str(tmp_path / "out"))
    assert code == 0
    df = pd.read_csv(tmp_path / "out" / "report.csv")
    assert df["runs"].tolist() == [1, 1]


def test_experiment_plan_rejects_zero_runs(tmp_path):
    plan = tmp_path / "plan.json"
    plan.write_text(json.dumps({"cells": [{"function": "sphere", "dimension": 2, "variant": "classical"}]}))
    assert _main("experiment", "--plan", str(plan), "--runs", "0", "--out-dir", str(tmp_path)) == 1


def test_experiment_preset_table1(tmp_path):
    assert _main("experiment", "--preset", "table1", "--runs", "1", "--out-dir", str(tmp_path)) == 0
    assert len(pd.read_csv(tmp_path / "report.csv")) == 16


def test_experiment_rejects_zero_jobs(tmp_path):
    assert _main("experiment", "--preset", "table1", "--runs", "1", "--jobs", "0",
                 "--out-dir", str(tmp_path)) == 1


def test_sweep(tmp_path):
    code = _main("sweep", "--mu-values", "1/10,1/100", "--dim", "2", "--variants", "classical",
                 "--runs", "2", "--particles", "10", "--iters", "20", "--out-dir", str(tmp_path))
    assert code == 0
    df = pd.read_csv(tmp_path / "sweep.csv")
    assert df["mu"].tolist() == [0.1, 0.01]


def test_sweep_switch_point_without_hybrid(tmp_path):
    code = _main("sweep", "--mu-values", "1/10", "--dim", "2", "--variants", "classical,social-only",
                 "--runs", "1", "--particles", "5", "--iters", "10", "--switch-at", "4",
                 "--out-dir", str(tmp_path))
    assert code == 1
    assert not (tmp_path / "sweep.csv").exists()


# ---------------------------------------------------------------------------
# potential
# ---------------------------------------------------------------------------

def test_potential_rastrigin(tmp_path):
    code = _main("potential", "--function", "rastrigin", "--dim", "1", "--variants", "classical,social-only",
                 "--seed", "3", "--iters", "200", "--out-dir", str(tmp_path))
    assert code == 0
    assert len(list(tmp_path.glob("potential_*.csv"))) == 2


def test_potential_rosenbrock_hybrid_prefix(tmp_path):
    code = _main("potential", "--function", "rosenbrock", "--dim", "2", "--variants", "classical,hybrid",
                 "--seed", "5", "--out-dir", str(tmp_path))
    assert code == 0
    classical = PotentialTrace.read_csv(tmp_path / "potential_rosenbrock_d2_classical_seed5.csv")
    hybrid = PotentialTrace.read_csv(tmp_path / "potential_rosenbrock_d2_hybrid_seed5.csv")
    assert len(classical) == 500
    np.testing.assert_array_equal(classical.phi[:250], hybrid.phi[:250])


def test_potential_preset(tmp_path):
    assert _main("potential", "--preset", "fig2", "--iters", "20", "--out-dir", str(tmp_path)) == 0
    names = sorted(p.name for p in tmp_path.glob("*.csv"))
    assert names == ["potential_rastrigin_d1_classical_seed0.csv",
                     "potential_rastrigin_d1_social-only_seed0.csv"]


@pytest.mark.parametrize("argv", [
    ("potential", "--function", "rastrigin", "--dim", "1", "--variants", "bogus"),
    ("potential", "--dim", "1"),
    ("potential", "--preset", "fig9"),
    ("potential", "--preset", "fig2", "--iters", "10", "--switch-at", "5"),
])
def test_potential_errors(argv):
    assert _main(*argv) == 1


# ---------------------------------------------------------------------------
# listing and help
# ---------------------------------------------------------------------------

def test_list_benchmarks(capsys):
    assert _main("list-benchmarks") == 0
    out = capsys.readouterr().out
    assert all(name in out for name in benchmark_names())


def test_help_lists_functions_and_variants(capsys):
    with pytest.raises(SystemExit) as info:
        _main("--help")
    assert info.value.code == 0
    out = capsys.readouterr().out
    assert all(name in out for name in benchmark_names())
    assert all(v in out for v in ("classical", "social-only", "hybrid"))
