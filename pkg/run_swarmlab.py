#!/usr/bin/env python3
"""
run_swarmlab.py — Command-line entry point for SwarmLab.

Usage
-----
python run_swarmlab.py [-v] <command> [options]

Commands
--------
run              One PSO run; prints f(p_glob), the G/L/O label and the
                 per-dimension distance to the optimum.
experiment       Run a JSON plan or a preset (table1, table2, table34) and
                 write report.csv + report.json.
sweep            Griewank μ sweep; writes sweep.csv + sweep.json.
potential        Φ traces for several variants sharing one seed
                 (presets fig2, fig3).
list-benchmarks  Print the supported functions and their search boxes.

Functions: ackley, elliptic, griewank, rastrigin, rosenbrock, schwefel, sphere
Variants : classical, social-only, hybrid

Exit codes: 0 success, 1 configuration error, 2 numeric failure, 3 I/O error.

Examples
--------
python run_swarmlab.py run --function sphere --dim 3 --variant classical --seed 1
python run_swarmlab.py run --function griewank --mu 1/10 --dim 5 --variant social-only --seed 7
python run_swarmlab.py experiment --preset table1 --out-dir out/ --jobs 4
python run_swarmlab.py potential --function rastrigin --dim 1 \\
       --variants classical,social-only --seed 3 --iters 200
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

# Ensure the package directory is importable when run directly.
sys.path.insert(0, str(Path(__file__).parent))

try:
    from swarmlab.analysis import classify, distance_to_optimum
    from swarmlab.benchmarks import benchmark_names, get_benchmark
    from swarmlab.config import (
        DEFAULT_BASE_SEED,
        DEFAULT_JOBS,
        DEFAULT_MAXITER,
        DEFAULT_PARTICLES,
        DEFAULT_RUNS,
        GRIEWANK_SWEEP_MU,
        RESULTS_DIR,
    )
    from swarmlab.errors import ConfigurationError, NumericFailure
    from swarmlab.harness import (
        POTENTIAL_PRESETS,
        PRESETS,
        griewank_sweep,
        load_plan,
        potential_experiment,
        preset_plan,
        run_plan,
        trace_filename,
        write_report,
    )
    from swarmlab.swarm import SwarmConfig, Variant, VariantSchedule, run
except ImportError as exc:
    print(f"CRITICAL ERROR: Could not import the 'swarmlab' package.\nDetails: {exc}")
    print("\n[Expected directory structure]")
    print("  ./run_swarmlab.py")
    print("  ./swarmlab/        (PSO package)")
    sys.exit(1)


EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


# ---------------------------------------------------------------------------
# Logger setup
# ---------------------------------------------------------------------------

def _setup_logger(name: str = "SwarmLab", verbose: bool = False) -> logging.Logger:
    """Configure and return a console logger."""
    log = logging.getLogger(name)
    log.setLevel(logging.DEBUG if verbose else logging.INFO)
    if log.handlers:
        return log
    handler = logging.StreamHandler(sys.stdout)
    handler.setFormatter(
        logging.Formatter("[%(asctime)s] %(levelname)s: %(message)s", datefmt="%H:%M:%S")
    )
    log.addHandler(handler)
    # Package loggers (swarmlab.*) report through the same handler.
    pkg = logging.getLogger("swarmlab")
    pkg.setLevel(log.level)
    if not pkg.handlers:
        pkg.addHandler(handler)
    return log


# ---------------------------------------------------------------------------
# Argument types
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Reports malformed flags as configuration errors (exit code 1)."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise ConfigurationError(f"{self.prog}: {message}")


def _variant_list(text: str) -> List[Variant]:
    variants = [Variant.parse(t) for t in text.split(",") if t.strip()]
    if not variants:
        raise ConfigurationError("--variants needs at least one variant")
    return variants


def _mu_list(text: str) -> List[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _jobs(value: int) -> int:
    if value == 0 or value < -1:
        raise ConfigurationError(f"--jobs must be >= 1 or -1 (all cores), got {value}")
    return value


def _add_swarm_flags(p: argparse.ArgumentParser, iters_default: Optional[int] = DEFAULT_MAXITER) -> None:
    p.add_argument("--particles", type=int, default=DEFAULT_PARTICLES, metavar="N",
                   help=f"Swarm size (default {DEFAULT_PARTICLES}).")
    p.add_argument("--iters", type=int, default=iters_default, metavar="MAXITER",
                   help=f"Iteration budget (default {DEFAULT_MAXITER}).")
    p.add_argument("--switch-at", type=int, default=None, metavar="ITER",
                   help="Last classical iteration of a hybrid run (default maxiter/2).")


def _build_parser() -> argparse.ArgumentParser:
    functions = ", ".join(benchmark_names())
    variants = ", ".join(v.value for v in Variant)

    parser = _Parser(
        description="Particle swarm optimisation laboratory: classical, social-only and hybrid PSO.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Log per-run detail.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # -- run ---------------------------------------------------------------
    p = sub.add_parser("run", help="Execute a single run.",
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--function", required=True, metavar="NAME",
                   help=f"Benchmark: {functions} (griewank also as 'griewank:mu=1/10').")
    p.add_argument("--mu", default=None, help="Griewank sphere weight, e.g. 0.00025 or 1/4000.")
    p.add_argument("--dim", type=int, required=True, metavar="D", help="Problem dimension.")
    p.add_argument("--variant", default=Variant.CLASSICAL.value, help=f"One of: {variants}.")
    p.add_argument("--seed", type=int, default=0, help="Seed of the run's random stream.")
    p.add_argument("--bounds", type=float, nargs=2, default=None, metavar=("LO", "HI"),
                   help="Override the default search interval.")
    p.add_argument("--trace-potential", action="store_true", help="Write the Φ trace as CSV.")
    p.add_argument("--out", type=Path, default=None, metavar="CSV",
                   help="Trace file (default: $SWARMLAB_OUT/potential_<function>_d<D>_<variant>_seed<S>.csv).")
    _add_swarm_flags(p)
    p.set_defaults(handler=cmd_run)

    # -- experiment --------------------------------------------------------
    p = sub.add_parser("experiment", help="Run a plan file or preset and write reports.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--plan", type=Path, metavar="JSON", help="Plan file.")
    src.add_argument("--preset", metavar="NAME", help=f"One of: {', '.join(PRESETS)}.")
    p.add_argument("--runs", type=int, default=None,
                   help=f"Runs per cell (preset default {DEFAULT_RUNS}; overrides every cell of a plan file).")
    p.add_argument("--base-seed", type=int, default=None,
                   help=f"Base seed (preset default {DEFAULT_BASE_SEED}; overrides every cell of a plan file).")
    p.add_argument("--out-dir", type=Path, default=RESULTS_DIR, help="Report directory.")
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="Concurrent runs (-1 = all cores).")
    p.set_defaults(handler=cmd_experiment)

    # -- sweep -------------------------------------------------------------
    p = sub.add_parser("sweep", help="Griewank μ sweep.")
    p.add_argument("--mu-values", type=_mu_list, default=None, metavar="LIST",
                   help="Comma-separated μ values (default 1/4000,1/2000,1/1000,1/500,1/100,1/10).")
    p.add_argument("--dim", type=int, default=5, metavar="D")
    p.add_argument("--variants", default="classical,social-only", help=f"Comma-separated: {variants}.")
    p.add_argument("--runs", type=int, default=DEFAULT_RUNS)
    p.add_argument("--base-seed", type=int, default=DEFAULT_BASE_SEED)
    p.add_argument("--out-dir", type=Path, default=RESULTS_DIR)
    p.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    _add_swarm_flags(p)
    p.set_defaults(handler=cmd_sweep)

    # -- potential ---------------------------------------------------------
    p = sub.add_parser("potential", help="Write Φ traces for several variants with one seed.")
    p.add_argument("--preset", default=None, help=f"One of: {', '.join(POTENTIAL_PRESETS)}.")
    p.add_argument("--function", default=None, metavar="NAME", help=f"Benchmark: {functions}.")
    p.add_argument("--mu", default=None)
    p.add_argument("--dim", type=int, default=None, metavar="D")
    p.add_argument("--variants", default=None, help=f"Comma-separated: {variants}.")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bounds", type=float, nargs=2, default=None, metavar=("LO", "HI"))
    p.add_argument("--out-dir", type=Path, default=RESULTS_DIR)
    _add_swarm_flags(p, iters_default=None)
    p.set_defaults(handler=cmd_potential)

    # -- list-benchmarks ---------------------------------------------------
    p = sub.add_parser("list-benchmarks", help="List supported functions.")
    p.set_defaults(handler=cmd_list_benchmarks)

    return parser


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_run(args: argparse.Namespace, log: logging.Logger) -> int:
    """Single run: print the result block and optionally write the Φ trace."""
    bench = get_benchmark(args.function, mu=args.mu, bounds=args.bounds)
    variant = Variant.parse(args.variant)
    config = SwarmConfig(variant=variant, n_particles=args.particles, maxiter=args.iters, seed=args.seed)
    schedule = VariantSchedule.for_variant(variant, config.maxiter, switch_at=args.switch_at)

    log.info("Running %s PSO on %s (D=%d, N=%d, maxiter=%d, seed=%d) …",
             variant.value, bench.label, args.dim, config.n_particles, config.maxiter, config.seed)
    record = run(config, schedule, bench, args.dim, trace_potential=args.trace_potential)
    label = classify(record.p_glob, bench, args.dim)

    print(f"function        {bench.label}")
    print(f"bounds          [{bench.lower!r}, {bench.upper!r}]")
    print(f"dimension       {args.dim}")
    print(f"variant         {variant.value}")
    print(f"seed            {config.seed}")
    print(f"evaluations     {record.evaluations}")
    print(f"f(p_glob)       {record.f_glob!r}")
    print(f"p_glob          {' '.join(repr(float(c)) for c in record.p_glob)}")
    print(f"classification  {label.value}")
    for d, dist in enumerate(distance_to_optimum(record.p_glob, bench), start=1):
        print(f"distance[{d}]     {float(dist)!r}")

    if args.trace_potential:
        path = args.out or RESULTS_DIR / trace_filename(bench, args.dim, variant, config.seed)
        record.potential.to_csv(path)
        log.info("Potential trace saved to: %s", path)
    return EXIT_OK


def cmd_experiment(args: argparse.Namespace, log: logging.Logger) -> int:
    """Run a plan file or preset; write report.csv and report.json."""
    if args.plan is not None:
        log.info("Reading plan from %s …", args.plan)
        plan = load_plan(args.plan)
        if args.runs is not None or args.base_seed is not None:
            log.info("Overriding plan cells: runs=%s base_seed=%s", args.runs, args.base_seed)
        plan = plan.with_runs(n_runs=args.runs, base_seed=args.base_seed)
    else:
        plan = preset_plan(
            args.preset,
            n_runs=DEFAULT_RUNS if args.runs is None else args.runs,
            base_seed=DEFAULT_BASE_SEED if args.base_seed is None else args.base_seed,
        )

    report = run_plan(plan, jobs=_jobs(args.jobs), log=log)
    for fmt in ("csv", "json"):
        path = write_report(report, fmt, args.out_dir / f"report.{fmt}")
        log.info("Report saved to: %s", path)
    return EXIT_NUMERIC if report.failures else EXIT_OK


def cmd_sweep(args: argparse.Namespace, log: logging.Logger) -> int:
    """Griewank μ sweep; write sweep.csv and sweep.json."""
    mu_values = GRIEWANK_SWEEP_MU
    if args.mu_values is not None:
        # Parsed through the benchmark resolver so that "1/4000" is accepted.
        mu_values = tuple(get_benchmark("griewank", mu=m).mu for m in args.mu_values)
    report = griewank_sweep(
        mu_values=mu_values,
        dimension=args.dim,
        variants=_variant_list(args.variants),
        n_runs=args.runs,
        base_seed=args.base_seed,
        n_particles=args.particles,
        maxiter=args.iters,
        jobs=_jobs(args.jobs),
        log=log,
        switch_at=args.switch_at,
    )
    for fmt in ("csv", "json"):
        path = write_report(report, fmt, args.out_dir / f"sweep.{fmt}")
        log.info("Report saved to: %s", path)
    return EXIT_NUMERIC if report.failures else EXIT_OK


def cmd_potential(args: argparse.Namespace, log: logging.Logger) -> int:
    """Write one Φ trace per variant, all sharing one seed."""
    function, dim, variants, iters = args.function, args.dim, None, args.iters
    if args.variants is not None:
        variants = _variant_list(args.variants)
    if args.preset is not None:
        try:
            setup = POTENTIAL_PRESETS[args.preset]
        except KeyError as exc:
            raise ConfigurationError(
                f"unknown potential preset '{args.preset}'; choose from {', '.join(POTENTIAL_PRESETS)}"
            ) from exc
        function = function or setup.function
        dim = dim if dim is not None else setup.dimension
        variants = variants or list(setup.variants)
        iters = iters if iters is not None else setup.maxiter
    if function is None or dim is None:
        raise ConfigurationError("potential needs --function and --dim, or --preset")

    bench = get_benchmark(function, mu=args.mu, bounds=args.bounds)
    paths = potential_experiment(
        bench,
        dim,
        variants or [Variant.CLASSICAL, Variant.SOCIAL_ONLY],
        seed=args.seed,
        maxiter=iters if iters is not None else DEFAULT_MAXITER,
        n_particles=args.particles,
        out_dir=args.out_dir,
        switch_at=args.switch_at,
        log=log,
    )
    for variant, path in paths.items():
        print(f"{variant.value:<12} {path}")
    return EXIT_OK


def cmd_list_benchmarks(args: argparse.Namespace, log: logging.Logger) -> int:
    print(f"{'name':<12} {'lower':>10} {'upper':>10} {'min D':>6} {'G factor':>9}")
    for name in benchmark_names():
        b = get_benchmark(name)
        print(f"{name:<12} {b.lower:>10g} {b.upper:>10g} {b.min_dim:>6d} {b.g_threshold_factor:>9g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Main
# ---------------------------------------------------------------------------

def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse *argv*, dispatch the subcommand and map errors to exit codes."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except ConfigurationError as exc:
        _setup_logger().error("%s", exc)
        return EXIT_CONFIG

    log = _setup_logger(verbose=args.verbose)
    try:
        return args.handler(args, log)
    except ConfigurationError as exc:
        log.error("Configuration error: %s", exc)
        return EXIT_CONFIG
    except NumericFailure as exc:
        log.error("Numeric failure: %s", exc)
        return EXIT_NUMERIC
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
