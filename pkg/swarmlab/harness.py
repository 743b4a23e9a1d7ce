"""
swarmlab/harness.py — Repeated-run experiments and their reports.

Workflow
--------
1. **Plan** — an :class:`ExperimentPlan` lists cells, each a
   (function [+ μ], dimension, variant, n_runs, base_seed) combination.
   Presets reproduce the classical/social-only comparison (``table1``), the
   Griewank μ sweep (``table2``) and the three-variant comparison with the
   hybrid (``table34``).  Plans can also be loaded from JSON.
2. **Execute** — :func:`run_plan` runs every (cell, run_index) with seed
   ``base_seed + run_index``, in parallel through :mod:`joblib` when asked.
   Runs that hit a non-finite fitness are quarantined and counted as failed.
3. **Aggregate** — each cell's records are classified and folded into a
   :class:`~swarmlab.analysis.PrecisionSummary`.
4. **Output** — :func:`write_report` persists the report as CSV or JSON;
   :func:`potential_experiment` writes per-variant Φ traces.

Public API
----------
Cell, ExperimentPlan, RunFailure, ExperimentReport
load_plan(path)                                  → ExperimentPlan
preset_plan(name, n_runs, base_seed)             → ExperimentPlan
run_single(plan, cell, run_index)                → RunRecord
run_plan(plan, jobs, log)                        → ExperimentReport
griewank_sweep(mu_values, dimension, variants, n_runs, base_seed, …) → ExperimentReport
potential_experiment(benchmark, dimension, variants, seed, maxiter, …) → Dict[Variant, Path]
potential_decay(benchmark, dimension, variants, seeds, maxiter, …)     → pd.DataFrame
POTENTIAL_PRESETS                                "fig2" / "fig3" trace setups
write_report(report, fmt, path)                  → Path
read_report_json(path)                           → ExperimentReport
"""

from __future__ import annotations

import dataclasses
import json
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from joblib import Parallel, delayed

from . import __version__
from .analysis import PrecisionSummary, classify, summarize
from .benchmarks import Benchmark, benchmark_names, get_benchmark
from .config import (
    DEFAULT_A,
    DEFAULT_B_GLOB,
    DEFAULT_B_LOC,
    DEFAULT_BASE_SEED,
    DEFAULT_MAXITER,
    DEFAULT_PARTICLES,
    DEFAULT_RUNS,
    GRIEWANK_SWEEP_MU,
    HYBRID_SWITCH_FRACTION,
    RESULTS_DIR,
)
from .errors import ConfigurationError, NumericFailure
from .rng import GENERATOR_ID
from .swarm import RunRecord, SwarmConfig, Variant, VariantSchedule, run

logger = logging.getLogger(__name__)

REPORT_COLUMNS: list[str] = [
    "function", "mu", "dimension", "variant", "runs", "G", "L", "O", "precision", "failed",
]

NOT_AVAILABLE: str = "n/a"

_CELL_FIELDS = frozenset({"function", "dimension", "variant", "n_runs", "base_seed", "mu", "bounds", "switch_at"})
_PLAN_FIELDS = frozenset({"name", "cells", "n_particles", "maxiter", "n_runs", "base_seed",
                          "trace_potential", "a", "b_glob", "b_loc"})


# ---------------------------------------------------------------------------
# Plan types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """One table cell: a benchmark in one dimension run by one variant."""

    function: str
    dimension: int
    variant: Variant
    n_runs: int = DEFAULT_RUNS
    base_seed: int = DEFAULT_BASE_SEED
    mu: Optional[float] = None
    bounds: Optional[Tuple[float, float]] = None
    switch_at: Optional[int] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if self.bounds is not None:
            object.__setattr__(self, "bounds", (float(self.bounds[0]), float(self.bounds[1])))
        if int(self.n_runs) < 1:
            raise ConfigurationError(f"n_runs must be >= 1, got {self.n_runs}")
        if int(self.base_seed) < 0:
            raise ConfigurationError(f"base_seed must be >= 0, got {self.base_seed}")
        if int(self.dimension) < 1:
            raise ConfigurationError(f"dimension must be >= 1, got {self.dimension}")
        # Fails early on a switch point given to a non-hybrid variant.
        self.schedule(DEFAULT_MAXITER)
        # Resolving the benchmark validates name, μ, bounds and dimension up front.
        self.benchmark().check_dimension(self.dimension)

    def benchmark(self) -> Benchmark:
        """The cell's benchmark with its μ and bounds applied."""
        return get_benchmark(self.function, mu=self.mu, bounds=self.bounds)

    def seed(self, run_index: int) -> int:
        """Seed of run *run_index*: ``base_seed + run_index``."""
        return int(self.base_seed) + int(run_index)

    def schedule(self, maxiter: int) -> VariantSchedule:
        """Variant schedule for a run of *maxiter* iterations."""
        return VariantSchedule.for_variant(self.variant, maxiter, switch_at=self.switch_at)


@dataclass(frozen=True)
class ExperimentPlan:
    """Cells plus the swarm settings shared by every run."""

    cells: Tuple[Cell, ...]
    name: str = "custom"
    n_particles: int = DEFAULT_PARTICLES
    maxiter: int = DEFAULT_MAXITER
    trace_potential: bool = False
    a: float = DEFAULT_A
    b_glob: float = DEFAULT_B_GLOB
    b_loc: float = DEFAULT_B_LOC

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        # Fails early on bad shared parameters.
        self.swarm_config(Variant.CLASSICAL, 0)

    def swarm_config(self, variant: Variant, seed: int) -> SwarmConfig:
        """Shared swarm settings for one run of *variant* seeded with *seed*."""
        return SwarmConfig(
            a=self.a,
            b_glob=self.b_glob,
            b_loc=self.b_loc,
            variant=variant,
            n_particles=self.n_particles,
            maxiter=self.maxiter,
            seed=seed,
        )

    @property
    def total_runs(self) -> int:
        return sum(c.n_runs for c in self.cells)

    def with_runs(self, n_runs: Optional[int] = None, base_seed: Optional[int] = None) -> "ExperimentPlan":
        """Copy of the plan with every cell's ``n_runs`` and/or ``base_seed`` replaced."""
        changes: Dict[str, int] = {}
        if n_runs is not None:
            changes["n_runs"] = int(n_runs)
        if base_seed is not None:
            changes["base_seed"] = int(base_seed)
        if not changes:
            return self
        return dataclasses.replace(self, cells=tuple(dataclasses.replace(c, **changes) for c in self.cells))


@dataclass(frozen=True)
class RunFailure:
    """A quarantined run."""

    cell: int
    run_index: int
    seed: int
    message: str


@dataclass(frozen=True)
class ExperimentReport:
    """One summary per cell, in plan order, plus run metadata."""

    summaries: Tuple[PrecisionSummary, ...]
    metadata: Dict[str, Any]
    failures: Tuple[RunFailure, ...] = ()
    records: Dict[int, List[RunRecord]] = field(default_factory=dict, compare=False, repr=False)

    def to_frame(self) -> pd.DataFrame:
        """One row per cell in :data:`REPORT_COLUMNS` order, floats pre-formatted."""
        rows = [
            {
                "function":  s.function,
                "mu":        "" if s.mu is None else _format_float(s.mu),
                "dimension": s.dimension,
                "variant":   s.variant,
                "runs":      s.runs,
                "G":         s.g_count,
                "L":         s.l_count,
                "O":         s.o_count,
                "precision": NOT_AVAILABLE if s.precision is None else _format_float(s.precision),
                "failed":    s.failed,
            }
            for s in self.summaries
        ]
        return pd.DataFrame(rows, columns=REPORT_COLUMNS)

    def same_results(self, other: "ExperimentReport") -> bool:
        """Equality ignoring the timestamp."""
        strip = lambda m: {k: v for k, v in m.items() if k != "timestamp"}
        return (
            self.summaries == other.summaries
            and self.failures == other.failures
            and strip(self.metadata) == strip(other.metadata)
        )


def _format_float(x: float) -> str:
    """Shortest round-trip representation, ``0`` rather than ``0.0``."""
    text = repr(float(x))
    return text[:-2] if text.endswith(".0") else text


# ---------------------------------------------------------------------------
# Plan loading and presets
# ---------------------------------------------------------------------------

def _reject_unknown(obj: Dict[str, Any], allowed: frozenset, where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigurationError(f"{where}: unknown field(s) {', '.join(unknown)}")


def plan_from_dict(doc: Dict[str, Any], where: str = "plan") -> ExperimentPlan:
    """Build a plan from its JSON document form; unknown fields are rejected."""
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{where}: expected a JSON object")
    _reject_unknown(doc, _PLAN_FIELDS, where)
    raw_cells = doc.get("cells")
    if not isinstance(raw_cells, list):
        raise ConfigurationError(f"{where}: 'cells' must be a list")

    trace_potential = doc.get("trace_potential", False)
    if not isinstance(trace_potential, bool):
        raise ConfigurationError(f"{where}: 'trace_potential' must be true or false, got {trace_potential!r}")

    n_runs = doc.get("n_runs", DEFAULT_RUNS)
    base_seed = doc.get("base_seed", DEFAULT_BASE_SEED)
    cells: List[Cell] = []
    for k, raw in enumerate(raw_cells):
        if not isinstance(raw, dict):
            raise ConfigurationError(f"{where}: cell {k} must be a JSON object")
        _reject_unknown(raw, _CELL_FIELDS, f"{where}: cell {k}")
        try:
            cells.append(Cell(
                function=raw["function"],
                dimension=int(raw["dimension"]),
                variant=raw["variant"],
                n_runs=int(raw.get("n_runs", n_runs)),
                base_seed=int(raw.get("base_seed", base_seed)),
                mu=raw.get("mu"),
                bounds=tuple(raw["bounds"]) if raw.get("bounds") is not None else None,
                switch_at=raw.get("switch_at"),
            ))
        except KeyError as exc:
            raise ConfigurationError(f"{where}: cell {k} is missing field {exc}") from exc
        except (TypeError, ValueError) as exc:
            raise ConfigurationError(f"{where}: cell {k}: {exc}") from exc

    try:
        return ExperimentPlan(
            cells=tuple(cells),
            name=str(doc.get("name", "custom")),
            n_particles=int(doc.get("n_particles", DEFAULT_PARTICLES)),
            maxiter=int(doc.get("maxiter", DEFAULT_MAXITER)),
            trace_potential=trace_potential,
            a=float(doc.get("a", DEFAULT_A)),
            b_glob=float(doc.get("b_glob", DEFAULT_B_GLOB)),
            b_loc=float(doc.get("b_loc", DEFAULT_B_LOC)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigurationError):
            raise
        raise ConfigurationError(f"{where}: {exc}") from exc


def load_plan(path: "str | Path") -> ExperimentPlan:
    """
    Read a JSON plan file.

    Raises
    ------
    FileNotFoundError
        If *path* does not exist.
    ConfigurationError
        Malformed JSON or schema violations.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"plan file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{path}: invalid JSON ({exc})") from exc
    return plan_from_dict(doc, where=str(path))


def _comparison_cells(
    rows: Iterable[Tuple[str, int]],
    variants: Sequence[Variant],
    n_runs: int,
    base_seed: int,
) -> Tuple[Cell, ...]:
    return tuple(
        Cell(function=fn, dimension=D, variant=v, n_runs=n_runs, base_seed=base_seed)
        for fn, D in rows
        for v in variants
    )


# Function rows of the three-dimensional comparison, plus 4-D Rastrigin.
_COMPARISON_ROWS: Tuple[Tuple[str, int], ...] = tuple(
    (name, 3) for name in benchmark_names()
) + (("rastrigin", 4),)


def table1_plan(n_runs: int = DEFAULT_RUNS, base_seed: int = DEFAULT_BASE_SEED) -> ExperimentPlan:
    """Classical vs social-only on all seven functions at D=3, plus Rastrigin D=4."""
    return ExperimentPlan(
        cells=_comparison_cells(_COMPARISON_ROWS, (Variant.CLASSICAL, Variant.SOCIAL_ONLY), n_runs, base_seed),
        name="table1",
    )


def table34_plan(n_runs: int = DEFAULT_RUNS, base_seed: int = DEFAULT_BASE_SEED) -> ExperimentPlan:
    """The table1 rows run by classical, hybrid and social-only PSO."""
    return ExperimentPlan(
        cells=_comparison_cells(
            _COMPARISON_ROWS, (Variant.CLASSICAL, Variant.HYBRID, Variant.SOCIAL_ONLY), n_runs, base_seed
        ),
        name="table34",
    )


def sweep_plan(
    mu_values: Sequence[float] = GRIEWANK_SWEEP_MU,
    dimension: int = 5,
    variants: Sequence["Variant | str"] = (Variant.CLASSICAL, Variant.SOCIAL_ONLY),
    n_runs: int = DEFAULT_RUNS,
    base_seed: int = DEFAULT_BASE_SEED,
    n_particles: int = DEFAULT_PARTICLES,
    maxiter: int = DEFAULT_MAXITER,
    switch_at: Optional[int] = None,
) -> ExperimentPlan:
    """One Griewank cell per (μ, variant); *switch_at* goes to the hybrid cells."""
    for mu in mu_values:
        if not (math.isfinite(mu) and mu > 0):
            raise ConfigurationError(f"mu values must be positive, got {mu!r}")
    variants = [Variant.parse(v) for v in variants]
    if switch_at is not None and Variant.HYBRID not in variants:
        raise ConfigurationError("switch_at only applies to the hybrid variant, which was not requested")
    return ExperimentPlan(
        cells=tuple(
            Cell(function="griewank", mu=float(mu), dimension=dimension, variant=v,
                 n_runs=n_runs, base_seed=base_seed,
                 switch_at=switch_at if v is Variant.HYBRID else None)
            for mu in mu_values
            for v in variants
        ),
        name="table2",
        n_particles=n_particles,
        maxiter=maxiter,
    )


PRESETS = {
    "table1":  table1_plan,
    "table2":  lambda n_runs=DEFAULT_RUNS, base_seed=DEFAULT_BASE_SEED: sweep_plan(n_runs=n_runs, base_seed=base_seed),
    "table34": table34_plan,
}


def preset_plan(name: str, n_runs: int = DEFAULT_RUNS, base_seed: int = DEFAULT_BASE_SEED) -> ExperimentPlan:
    """
    Build a named preset plan (``table1``, ``table2``, ``table34``).

    Raises
    ------
    ConfigurationError
        Unknown *name*.
    """
    try:
        factory = PRESETS[name]
    except KeyError as exc:
        raise ConfigurationError(f"unknown preset '{name}'; choose from {', '.join(PRESETS)}") from exc
    return factory(n_runs=n_runs, base_seed=base_seed)


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def run_single(plan: ExperimentPlan, cell: Cell, run_index: int) -> RunRecord:
    """Run and classify one (cell, run_index); seeded with ``base_seed + run_index``."""
    bench = cell.benchmark()
    config = plan.swarm_config(cell.variant, cell.seed(run_index))
    record = run(config, cell.schedule(plan.maxiter), bench, cell.dimension,
                 trace_potential=plan.trace_potential)
    label = classify(record.p_glob, bench, cell.dimension)
    return record.with_classification(label.value)


def _run_task(
    plan: ExperimentPlan,
    cell_index: int,
    run_index: int,
) -> Tuple[int, int, Optional[RunRecord], Optional[RunFailure]]:
    cell = plan.cells[cell_index]
    try:
        return cell_index, run_index, run_single(plan, cell, run_index), None
    except NumericFailure as exc:
        return cell_index, run_index, None, RunFailure(cell_index, run_index, cell.seed(run_index), str(exc))


def _metadata(plan: ExperimentPlan) -> Dict[str, Any]:
    # Per-cell bounds live on the summaries; this records the unmodified defaults.
    default_bounds: Dict[str, List[float]] = {}
    for cell in plan.cells:
        bench = get_benchmark(cell.function, mu=cell.mu)
        default_bounds[bench.name] = [bench.lower, bench.upper]
    return {
        "plan":        plan.name,
        "generator":   GENERATOR_ID,
        "version":     __version__,
        "timestamp":   datetime.now(timezone.utc).isoformat(),
        "parameters": {
            "a":                      plan.a,
            "b_glob":                 plan.b_glob,
            "b_loc":                  plan.b_loc,
            "n_particles":            plan.n_particles,
            "maxiter":                plan.maxiter,
            "hybrid_switch_fraction": HYBRID_SWITCH_FRACTION,
        },
        "default_bounds": default_bounds,
    }


def run_plan(
    plan: ExperimentPlan,
    jobs: int = 1,
    log: Optional[logging.Logger] = None,
) -> ExperimentReport:
    """
    Execute every run of *plan* and aggregate per cell.

    Parameters
    ----------
    jobs : int
        Maximum number of concurrent runs (``-1`` = all cores).  Results do
        not depend on it.
    log : logging.Logger, optional
        Logger for progress and failure messages.
    """
    _log = log or logger
    tasks = [(ci, r) for ci, cell in enumerate(plan.cells) for r in range(cell.n_runs)]
    _log.info(
        "Running plan '%s': %d cell(s), %d run(s), %d job(s) …",
        plan.name, len(plan.cells), len(tasks), jobs,
    )

    # ------------------------------------------------------------------
    # Step 1: execute (completion order is irrelevant)
    # ------------------------------------------------------------------
    outcomes = Parallel(n_jobs=jobs)(
        delayed(_run_task)(plan, ci, r) for ci, r in tasks
    ) if tasks else []

    # ------------------------------------------------------------------
    # Step 2: group by cell, in run-index order
    # ------------------------------------------------------------------
    by_cell: Dict[int, List[Tuple[int, RunRecord]]] = defaultdict(list)
    failures: List[RunFailure] = []
    for ci, r, record, failure in outcomes:
        if failure is not None:
            _log.error(
                "QUARANTINED run %d of cell %d (%s D=%d %s, seed %d): %s",
                r, ci, plan.cells[ci].function, plan.cells[ci].dimension,
                plan.cells[ci].variant.value, failure.seed, failure.message,
            )
            failures.append(failure)
        else:
            by_cell[ci].append((r, record))
    failures.sort(key=lambda f: (f.cell, f.run_index))

    # ------------------------------------------------------------------
    # Step 3: aggregate
    # ------------------------------------------------------------------
    summaries: List[PrecisionSummary] = []
    records: Dict[int, List[RunRecord]] = {}
    for ci, cell in enumerate(plan.cells):
        recs = [rec for _, rec in sorted(by_cell.get(ci, []), key=lambda t: t[0])]
        n_failed = sum(1 for f in failures if f.cell == ci)
        summary = summarize(recs, cell.benchmark(), cell.dimension, cell.variant.value,
                            runs=cell.n_runs, failed=n_failed)
        summaries.append(summary)
        records[ci] = recs
        _log.info(
            "%-24s D=%d %-11s G=%2d L=%2d O=%2d failed=%d precision=%s",
            cell.benchmark().label, cell.dimension, cell.variant.value,
            summary.g_count, summary.l_count, summary.o_count, summary.failed,
            NOT_AVAILABLE if summary.precision is None else _format_float(summary.precision),
        )

    if failures:
        _log.error("%d run(s) failed numerically and were excluded from the counts.", len(failures))

    return ExperimentReport(
        summaries=tuple(summaries),
        metadata=_metadata(plan),
        failures=tuple(failures),
        records=records,
    )


def griewank_sweep(
    mu_values: Sequence[float] = GRIEWANK_SWEEP_MU,
    dimension: int = 5,
    variants: Sequence["Variant | str"] = (Variant.CLASSICAL, Variant.SOCIAL_ONLY),
    n_runs: int = DEFAULT_RUNS,
    base_seed: int = DEFAULT_BASE_SEED,
    n_particles: int = DEFAULT_PARTICLES,
    maxiter: int = DEFAULT_MAXITER,
    jobs: int = 1,
    log: Optional[logging.Logger] = None,
    switch_at: Optional[int] = None,
) -> ExperimentReport:
    """Run the Griewank μ sweep: one cell per (μ, variant)."""
    plan = sweep_plan(mu_values, dimension, variants, n_runs, base_seed, n_particles, maxiter, switch_at)
    return run_plan(plan, jobs=jobs, log=log)


# ---------------------------------------------------------------------------
# Potential traces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PotentialSetup:
    """A canned potential-trace comparison."""

    function: str
    dimension: int
    variants: Tuple[Variant, ...]
    maxiter: int


POTENTIAL_PRESETS: Dict[str, PotentialSetup] = {
    # Classical vs social-only on the 1-D Rastrigin function.
    "fig2": PotentialSetup("rastrigin", 1, (Variant.CLASSICAL, Variant.SOCIAL_ONLY), 200),
    # Classical vs hybrid on 2-D Rosenbrock; identical until the switch.
    "fig3": PotentialSetup("rosenbrock", 2, (Variant.CLASSICAL, Variant.HYBRID), DEFAULT_MAXITER),
}


def trace_filename(bench: Benchmark, dimension: int, variant: Variant, seed: int) -> str:
    """File name of one Φ trace, e.g. ``potential_rastrigin_d1_classical_seed3.csv``."""
    stem = bench.name if bench.mu is None else f"{bench.name}-mu{_format_float(bench.mu)}"
    return f"potential_{stem}_d{dimension}_{variant.value}_seed{seed}.csv"


def potential_experiment(
    benchmark: Benchmark,
    dimension: int,
    variants: Sequence["Variant | str"],
    seed: int,
    maxiter: int = DEFAULT_MAXITER,
    n_particles: int = DEFAULT_PARTICLES,
    out_dir: "str | Path | None" = None,
    switch_at: Optional[int] = None,
    log: Optional[logging.Logger] = None,
) -> Dict[Variant, Path]:
    """
    Run each variant once with the same seed and write its Φ trace.

    Returns
    -------
    Dict mapping variant → path of its ``iteration,dim,phi`` CSV.
    """
    _log = log or logger
    out_dir = Path(out_dir) if out_dir is not None else RESULTS_DIR
    variants = [Variant.parse(v) for v in variants]
    if switch_at is not None and Variant.HYBRID not in variants:
        raise ConfigurationError("switch_at only applies to the hybrid variant, which was not requested")
    written: Dict[Variant, Path] = {}
    for variant in variants:
        config = SwarmConfig(variant=variant, n_particles=n_particles, maxiter=maxiter, seed=seed)
        schedule = VariantSchedule.for_variant(
            variant, maxiter, switch_at=switch_at if variant is Variant.HYBRID else None
        )
        record = run(config, schedule, benchmark, dimension, trace_potential=True)
        path = out_dir / trace_filename(benchmark, dimension, variant, seed)
        record.potential.to_csv(path)
        _log.info(
            "%s trace (%d iterations, final Σ Φ = %r) written to %s",
            variant.value, len(record.potential), float(record.potential.total()[-1]), path,
        )
        written[variant] = path
    return written


def _final_potential(config: SwarmConfig, bench: Benchmark, dimension: int) -> float:
    record = run(config, None, bench, dimension, trace_potential=True)
    return float(record.potential.total()[-1])


def potential_decay(
    benchmark: Benchmark,
    dimension: int,
    variants: Sequence["Variant | str"],
    seeds: Iterable[int],
    maxiter: int,
    n_particles: int = DEFAULT_PARTICLES,
    jobs: int = 1,
) -> pd.DataFrame:
    """
    Σ_d Φ^d at the last iteration, for every (variant, seed).

    Returns
    -------
    pd.DataFrame with columns ``variant``, ``seed``, ``final_potential``.
    """
    seeds = list(seeds)
    keys = [(Variant.parse(v), s) for v in variants for s in seeds]
    values = Parallel(n_jobs=jobs)(
        delayed(_final_potential)(
            SwarmConfig(variant=v, n_particles=n_particles, maxiter=maxiter, seed=s),
            benchmark, dimension,
        )
        for v, s in keys
    )
    return pd.DataFrame(
        {"variant": [v.value for v, _ in keys], "seed": [s for _, s in keys], "final_potential": values},
        columns=["variant", "seed", "final_potential"],
    )


# ---------------------------------------------------------------------------
# Persistence
# ---------------------------------------------------------------------------

def _report_document(report: ExperimentReport) -> Dict[str, Any]:
    cells = [
        {
            "function":  s.function,
            "mu":        s.mu,
            "dimension": s.dimension,
            "variant":   s.variant,
            "runs":      s.runs,
            "G":         s.g_count,
            "L":         s.l_count,
            "O":         s.o_count,
            "precision": NOT_AVAILABLE if s.precision is None else s.precision,
            "failed":    s.failed,
            "bounds":    None if s.bounds is None else list(s.bounds),
        }
        for s in report.summaries
    ]
    return {
        "metadata": report.metadata,
        "cells":    cells,
        "failures": [dataclasses.asdict(f) for f in report.failures],
    }


def write_report(report: ExperimentReport, fmt: str, path: "str | Path") -> Path:
    """
    Write *report* as ``"csv"`` (one row per cell) or ``"json"`` (cells,
    failures and metadata).

    Raises
    ------
    ConfigurationError
        Unknown *fmt*.
    OSError
        If the file cannot be written; the message names *path*.
    """
    path = Path(path)
    if fmt not in ("csv", "json"):
        raise ConfigurationError(f"unknown report format '{fmt}' (expected csv or json)")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            report.to_frame().to_csv(path, index=False)
        else:
            path.write_text(json.dumps(_report_document(report), indent=2) + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"could not write report to {path}: {exc}") from exc
    return path


def read_report_json(path: "str | Path") -> ExperimentReport:
    """Inverse of ``write_report(report, "json", path)``."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise OSError(f"could not read report {path}: {exc}") from exc
    summaries = tuple(
        PrecisionSummary(
            function=c["function"],
            mu=c["mu"],
            dimension=c["dimension"],
            variant=c["variant"],
            runs=c["runs"],
            g_count=c["G"],
            l_count=c["L"],
            o_count=c["O"],
            failed=c["failed"],
            precision=None if c["precision"] == NOT_AVAILABLE else float(c["precision"]),
            bounds=None if c.get("bounds") is None else tuple(float(b) for b in c["bounds"]),
        )
        for c in doc["cells"]
    )
    failures = tuple(RunFailure(**f) for f in doc.get("failures", []))
    return ExperimentReport(summaries=summaries, metadata=doc["metadata"], failures=failures)
