import json
import logging

import numpy as np
import pandas as pd
import pytest

from swarmlab.analysis import PrecisionSummary
from swarmlab.benchmarks import get_benchmark
from swarmlab.errors import ConfigurationError
from swarmlab.harness import (
    POTENTIAL_PRESETS,
    REPORT_COLUMNS,
    Cell,
    ExperimentPlan,
    ExperimentReport,
    griewank_sweep,
    load_plan,
    potential_decay,
    potential_experiment,
    preset_plan,
    read_report_json,
    run_plan,
    run_single,
    sweep_plan,
    table1_plan,
    table34_plan,
    trace_filename,
    write_report,
)
from swarmlab.potential import PotentialTrace
from swarmlab.swarm import Variant

HEADER = ",".join(REPORT_COLUMNS)


def _small_plan(cells=None, **kwargs):
    if cells is None:
        cells = (
            Cell("sphere", 2, Variant.CLASSICAL, n_runs=3),
            Cell("rastrigin", 2, Variant.SOCIAL_ONLY, n_runs=3, base_seed=10),
            Cell("griewank", 2, Variant.HYBRID, n_runs=2, mu=0.1),
        )
    kwargs.setdefault("n_particles", 12)
    kwargs.setdefault("maxiter", 30)
    return ExperimentPlan(cells=cells, **kwargs)


# ---------------------------------------------------------------------------
# Plans
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    {"function": "sphere", "dimension": 2, "variant": "classical", "n_runs": 0},
    {"function": "rosenbrock", "dimension": 1, "variant": "classical"},
    {"function": "sphere", "dimension": 2, "variant": "bogus"},
    {"function": "sphere", "dimension": 2, "variant": "classical", "mu": 0.1},
    {"function": "sphere", "dimension": 2, "variant": "classical", "base_seed": -3},
])
def test_cell_validation(kwargs):
    with pytest.raises(ConfigurationError):
        Cell(**kwargs)


def test_cell_seeds():
    cell = Cell("sphere", 2, "classical", n_runs=4, base_seed=100)
    assert [cell.seed(r) for r in range(4)] == [100, 101, 102, 103]


def test_plan_defaults():
    plan = ExperimentPlan(cells=[Cell("sphere", 3, "classical")])
    assert (plan.n_particles, plan.maxiter, plan.cells[0].n_runs) == (100, 500, 50)
    assert isinstance(plan.cells, tuple)


def test_preset_sizes():
    assert len(table1_plan().cells) == 16 and table1_plan().total_runs == 800
    assert len(table34_plan().cells) == 24
    sweep = sweep_plan()
    assert len(sweep.cells) == 12 and sweep.total_runs == 600
    assert {c.dimension for c in sweep.cells} == {5}
    assert preset_plan("table2", n_runs=2).total_runs == 24


def test_table1_rows():
    rows = {(c.function, c.dimension) for c in table1_plan().cells}
    assert ("rastrigin", 4) in rows
    assert len(rows) == 8
    assert {c.variant for c in table1_plan().cells} == {Variant.CLASSICAL, Variant.SOCIAL_ONLY}


def test_unknown_preset():
    with pytest.raises(ConfigurationError):
        preset_plan("table9")


def test_sweep_rejects_non_positive_mu():
    with pytest.raises(ConfigurationError):
        sweep_plan(mu_values=(0.1, 0.0))


@pytest.mark.parametrize("variant", ["classical", "social-only"])
def test_switch_point_needs_hybrid(variant):
    with pytest.raises(ConfigurationError, match="hybrid"):
        Cell("sphere", 2, variant, switch_at=3)
    with pytest.raises(ConfigurationError, match="hybrid"):
        sweep_plan(mu_values=(0.1,), variants=(variant,), switch_at=3)


def test_sweep_switch_point_goes_to_hybrid_only():
    plan = sweep_plan(mu_values=(0.1,), variants=("classical", "hybrid"), maxiter=40, switch_at=7)
    assert [c.switch_at for c in plan.cells] == [None, 7]


def test_with_runs_overrides_every_cell():
    plan = _small_plan()
    both = plan.with_runs(n_runs=1, base_seed=5)
    assert [(c.n_runs, c.base_seed) for c in both.cells] == [(1, 5)] * 3
    assert [c.function for c in both.cells] == [c.function for c in plan.cells]
    seeds_only = plan.with_runs(base_seed=9)
    assert [c.n_runs for c in seeds_only.cells] == [3, 3, 2]
    assert plan.with_runs() is plan
    with pytest.raises(ConfigurationError):
        plan.with_runs(n_runs=0)


# ---------------------------------------------------------------------------
# Plan files
# ---------------------------------------------------------------------------

def _write_json(path, doc):
    path.write_text(json.dumps(doc))
    return path


def test_load_plan(tmp_path):
    path = _write_json(tmp_path / "plan.json", {
        "name": "mine",
        "n_particles": 10,
        "maxiter": 20,
        "n_runs": 4,
        "cells": [
            {"function": "griewank:mu=1/10", "dimension": 2, "variant": "social-only"},
            {"function": "rastrigin", "dimension": 1, "variant": "hybrid", "n_runs": 2,
             "base_seed": 7, "bounds": [-2.0, 2.0], "switch_at": 5},
        ],
    })
    plan = load_plan(path)
    assert plan.name == "mine" and plan.maxiter == 20
    assert plan.cells[0].n_runs == 4 and plan.cells[0].benchmark().mu == 0.1
    assert plan.cells[1].bounds == (-2.0, 2.0)
    assert plan.cells[1].schedule(20).switch_iteration == 5


def test_load_plan_missing(tmp_path):
    missing = tmp_path / "missing.json"
    with pytest.raises(FileNotFoundError, match="missing.json"):
        load_plan(missing)


@pytest.mark.parametrize("doc", [
    {"cells": [], "colour": "red"},
    {"cells": [{"function": "sphere", "dimension": 2, "variant": "classical", "speed": 1}]},
    {"cells": [{"function": "sphere", "variant": "classical"}]},
    {"cells": "sphere"},
    {"cells": [], "trace_potential": "false"},
    {"cells": [{"function": "sphere", "dimension": 2, "variant": "classical", "switch_at": 3}]},
    [1, 2, 3],
])
def test_load_plan_schema_errors(tmp_path, doc):
    with pytest.raises(ConfigurationError):
        load_plan(_write_json(tmp_path / "plan.json", doc))


def test_load_plan_bad_json(tmp_path):
    path = tmp_path / "plan.json"
    path.write_text("{not json")
    with pytest.raises(ConfigurationError):
        load_plan(path)


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def test_single_cell_single_run():
    report = run_plan(_small_plan((Cell("ackley", 2, "classical", n_runs=1),)))
    assert len(report.summaries) == 1
    s = report.summaries[0]
    assert s.g_count + s.l_count + s.o_count + s.failed == 1


def test_counts_conserved_and_metadata():
    plan = _small_plan()
    report = run_plan(plan)
    for cell, s in zip(plan.cells, report.summaries):
        assert s.g_count + s.l_count + s.o_count + s.failed == cell.n_runs
        assert s.variant == cell.variant.value
    meta = report.metadata
    assert meta["generator"] == "numpy.PCG64"
    assert meta["parameters"]["n_particles"] == 12
    assert meta["default_bounds"]["sphere"] == [-100.0, 100.0]
    assert meta["default_bounds"]["griewank"] == [-600.0, 600.0]
    assert [s.bounds for s in report.summaries] == [(-100.0, 100.0), (-5.12, 5.12), (-600.0, 600.0)]
    assert "timestamp" in meta


def test_bounds_recorded_per_cell(tmp_path):
    plan = _small_plan((
        Cell("rastrigin", 2, "classical", n_runs=1),
        Cell("rastrigin", 2, "classical", n_runs=1, bounds=(-1.0, 1.0)),
    ))
    report = run_plan(plan)
    assert [s.bounds for s in report.summaries] == [(-5.12, 5.12), (-1.0, 1.0)]
    assert report.metadata["default_bounds"] == {"rastrigin": [-5.12, 5.12]}
    path = write_report(report, "json", tmp_path / "report.json")
    doc = json.loads(path.read_text())
    assert [c["bounds"] for c in doc["cells"]] == [[-5.12, 5.12], [-1.0, 1.0]]
    assert read_report_json(path) == report


def test_run_plan_deterministic():
    plan = _small_plan()
    first, second = run_plan(plan), run_plan(plan)
    assert first.same_results(second)
    assert first.summaries == second.summaries


def test_parallel_matches_serial():
    plan = _small_plan()
    assert run_plan(plan, jobs=2).same_results(run_plan(plan, jobs=1))


def test_seed_discipline():
    plan = _small_plan()
    report = run_plan(plan)
    for ci, cell in enumerate(plan.cells):
        for r in range(cell.n_runs):
            alone = run_single(plan, cell, r)
            assert alone.seed == cell.seed(r)
            assert alone.identical(report.records[ci][r])


def test_cell_order_does_not_matter():
    plan = _small_plan()
    reversed_plan = _small_plan(tuple(reversed(plan.cells)))
    forward = run_plan(plan).summaries
    backward = run_plan(reversed_plan).summaries
    assert list(forward) == list(reversed(backward))


def test_numeric_failures_are_quarantined(caplog):
    plan = _small_plan((
        Cell("sphere", 2, "classical", n_runs=2, bounds=(-1e200, 1e200)),
        Cell("sphere", 2, "classical", n_runs=2),
    ))
    with caplog.at_level(logging.ERROR):
        report = run_plan(plan)
    broken, fine = report.summaries
    assert (broken.failed, broken.g_count + broken.l_count + broken.o_count) == (2, 0)
    assert broken.precision is None
    assert fine.failed == 0
    assert [(f.cell, f.run_index) for f in report.failures] == [(0, 0), (0, 1)]
    assert "QUARANTINED" in caplog.text


def test_trace_potential_plan():
    plan = _small_plan((Cell("sphere", 2, "classical", n_runs=1),), trace_potential=True)
    record = run_plan(plan).records[0][0]
    assert len(record.potential) == 30


def test_griewank_sweep_small():
    report = griewank_sweep(mu_values=(0.1, 0.01), dimension=2, variants=("classical",),
                            n_runs=2, n_particles=10, maxiter=20)
    assert [s.mu for s in report.summaries] == [0.1, 0.01]
    assert all(s.function == "griewank" and s.runs == 2 for s in report.summaries)
    assert report.metadata["plan"] == "table2"


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def _report(*summaries):
    return ExperimentReport(summaries=tuple(summaries), metadata={"generator": "numpy.PCG64"})


def test_empty_plan_header_only_csv(tmp_path):
    report = run_plan(ExperimentPlan(cells=()))
    path = write_report(report, "csv", tmp_path / "report.csv")
    assert path.read_text().strip() == HEADER


def test_exact_precision_renders_as_zero(tmp_path):
    s = PrecisionSummary("sphere", None, 3, "classical", runs=2, g_count=2, l_count=0, o_count=0,
                         failed=0, precision=0.0)
    path = write_report(_report(s), "csv", tmp_path / "r.csv")
    lines = path.read_text().splitlines()
    assert lines[0] == HEADER
    assert lines[1] == "sphere,,3,classical,2,2,0,0,0,0"


def test_undefined_precision_renders_na(tmp_path):
    s = PrecisionSummary("griewank", 0.00025, 5, "social-only", runs=3, g_count=0, l_count=1,
                         o_count=2, failed=0, precision=None)
    path = write_report(_report(s), "csv", tmp_path / "r.csv")
    assert path.read_text().splitlines()[1] == "griewank,0.00025,5,social-only,3,0,1,2,n/a,0"
    doc = json.loads(write_report(_report(s), "json", tmp_path / "r.json").read_text())
    assert doc["cells"][0]["precision"] == "n/a"


def test_json_round_trip(tmp_path):
    report = run_plan(_small_plan())
    path = write_report(report, "json", tmp_path / "report.json")
    back = read_report_json(path)
    assert back == report
    assert back.same_results(report)


def test_csv_bytes_reproducible(tmp_path):
    plan = _small_plan()
    a = write_report(run_plan(plan), "csv", tmp_path / "a.csv").read_bytes()
    b = write_report(run_plan(plan), "csv", tmp_path / "b.csv").read_bytes()
    assert a == b
    df = pd.read_csv(tmp_path / "a.csv")
    assert list(df.columns) == REPORT_COLUMNS and len(df) == 3


def test_unknown_format(tmp_path):
    with pytest.raises(ConfigurationError):
        write_report(_report(), "xml", tmp_path / "r.xml")


def test_unwritable_path(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x")
    with pytest.raises(OSError, match="file.txt"):
        write_report(_report(), "csv", blocker / "report.csv")


# ---------------------------------------------------------------------------
# Potential experiments
# ---------------------------------------------------------------------------

def test_trace_filename():
    b = get_benchmark("griewank:mu=0.1")
    assert trace_filename(b, 5, Variant.HYBRID, 2) == "potential_griewank-mu0.1_d5_hybrid_seed2.csv"


def test_potential_experiment_writes_one_file_per_variant(tmp_path):
    paths = potential_experiment(get_benchmark("rastrigin"), 1, ["classical", "social-only"], seed=3,
                                 maxiter=20, n_particles=10, out_dir=tmp_path)
    assert set(paths) == {Variant.CLASSICAL, Variant.SOCIAL_ONLY}
    for path in paths.values():
        assert path.exists()
        assert len(PotentialTrace.read_csv(path)) == 20


def test_potential_experiment_hybrid_prefix(tmp_path):
    paths = potential_experiment(get_benchmark("rosenbrock"), 2, ["classical", "hybrid"], seed=5,
                                 maxiter=40, n_particles=10, out_dir=tmp_path)
    classical = PotentialTrace.read_csv(paths[Variant.CLASSICAL])
    hybrid = PotentialTrace.read_csv(paths[Variant.HYBRID])
    np.testing.assert_array_equal(classical.phi[:20], hybrid.phi[:20])


def test_potential_experiment_single_iteration(tmp_path):
    paths = potential_experiment(get_benchmark("sphere"), 2, ["classical", "hybrid"], seed=0,
                                 maxiter=1, n_particles=5, out_dir=tmp_path)
    traces = [PotentialTrace.read_csv(p) for p in paths.values()]
    assert all(len(t) == 1 for t in traces)
    np.testing.assert_array_equal(traces[0].phi, traces[1].phi)


def test_potential_experiment_switch_point_needs_hybrid(tmp_path):
    with pytest.raises(ConfigurationError, match="hybrid"):
        potential_experiment(get_benchmark("sphere"), 2, ["classical", "social-only"], seed=0,
                             maxiter=5, n_particles=5, out_dir=tmp_path, switch_at=2)
    assert list(tmp_path.iterdir()) == []


def test_potential_decay_frame():
    df = potential_decay(get_benchmark("rastrigin"), 1, ["classical", "social-only"], seeds=range(3),
                         maxiter=15, n_particles=8)
    assert list(df.columns) == ["variant", "seed", "final_potential"]
    assert len(df) == 6
    assert (df["final_potential"] >= 0.0).all()


def test_figure_presets():
    assert POTENTIAL_PRESETS["fig2"].function == "rastrigin"
    assert POTENTIAL_PRESETS["fig2"].maxiter == 200
    assert POTENTIAL_PRESETS["fig3"].variants == (Variant.CLASSICAL, Variant.HYBRID)
