"""
swarmlab — Particle swarm optimisation laboratory.

Submodules
----------
config      : Default PSO parameters, bounds and environment-driven constants.
errors      : Exception types (mapped to CLI exit codes).
rng         : The seeded random stream owned by each run.
benchmarks  : Seven test functions with analytic gradients and known optima.
swarm       : Classical, social-only and hybrid PSO.
potential   : Swarm potential Φ, particle potential Ψ and Φ traces.
analysis    : G/L/O classification and precision summaries.
harness     : Repeated-run experiments, presets and CSV/JSON reports.
"""

__version__: str = "1.0.0"

__all__: list[str] = [
    "analysis",
    "benchmarks",
    "config",
    "errors",
    "harness",
    "potential",
    "rng",
    "swarm",
]
