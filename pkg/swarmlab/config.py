"""
swarmlab/config.py — Centralised defaults and environment-driven constants.

Environment variables
---------------------
SWARMLAB_OUT    Default output directory for reports and potential traces.
                Default: "<repo>/results"
SWARMLAB_JOBS   Default number of concurrent runs used by the harness.
                Default: "1"
"""

from __future__ import annotations

from pathlib import Path
import os

# ---------------------------------------------------------------------------
# Directory layout (relative to this file's package root)
# ---------------------------------------------------------------------------
BASE_DIR: Path = Path(__file__).resolve().parents[1]

RESULTS_DIR: Path = Path(os.getenv("SWARMLAB_OUT", str(BASE_DIR / "results")))

DEFAULT_JOBS: int = int(os.getenv("SWARMLAB_JOBS", "1"))

# ---------------------------------------------------------------------------
# PSO parameters
# ---------------------------------------------------------------------------
DEFAULT_A: float      = 0.72984
DEFAULT_B_GLOB: float = 1.496172
DEFAULT_B_LOC: float  = 1.496172

DEFAULT_PARTICLES: int = 100
DEFAULT_MAXITER: int   = 500
DEFAULT_RUNS: int      = 50
DEFAULT_BASE_SEED: int = 0

# Hybrid PSO runs classically for this share of the budget, social-only after.
HYBRID_SWITCH_FRACTION: float = 0.5

# ---------------------------------------------------------------------------
# Search-space bounds (identical in every dimension)
# ---------------------------------------------------------------------------
DEFAULT_BOUNDS: dict[str, tuple[float, float]] = {
    "ackley":     (-32.0, 32.0),
    "elliptic":   (-100.0, 100.0),
    "griewank":   (-600.0, 600.0),
    "rastrigin":  (-5.12, 5.12),
    "rosenbrock": (-30.0, 30.0),
    "schwefel":   (-500.0, 500.0),
    "sphere":     (-100.0, 100.0),
}

# ---------------------------------------------------------------------------
# Result classification
# ---------------------------------------------------------------------------
G_FACTOR: float       = 0.0015
G_FACTOR_WIDE: float  = 0.005   # Schwefel and Rosenbrock
L_GRADIENT_TOL: float = 0.1

# ---------------------------------------------------------------------------
# Griewank family
# ---------------------------------------------------------------------------
GRIEWANK_MU: float = 1.0 / 4000.0

GRIEWANK_SWEEP_MU: tuple[float, ...] = (
    1.0 / 4000.0,
    1.0 / 2000.0,
    1.0 / 1000.0,
    1.0 / 500.0,
    1.0 / 100.0,
    1.0 / 10.0,
)
