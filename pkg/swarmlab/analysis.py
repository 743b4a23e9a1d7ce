"""
swarmlab/analysis.py — Result classification and precision.

A run's output (its final global attractor) is labelled:

G  every coordinate lies within ``g_threshold_factor · (hi − lo)`` of the
   known optimum (factor 0.0015, or 0.005 for Schwefel and Rosenbrock);
L  not G, but every gradient entry satisfies ``|∂f/∂x_d| ≤ 0.1``.
   Rosenbrock with D ≤ 3 has no non-global local optimum, so it never
   receives L;
O  anything else.

*Precision* is the mean of ``f(p_glob) − f*`` over the G-labelled runs only,
and is undefined (``None``) when no run reached G.

Public API
----------
Classification                          G / L / O labels
classify(result, benchmark, D)          → Classification
distance_to_optimum(result, benchmark)  → ndarray of per-dimension distances
precision(records, benchmark, D)        → float or None
PrecisionSummary                        one table cell
summarize(records, benchmark, D, variant, runs, failed) → PrecisionSummary
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .benchmarks import Benchmark
from .config import L_GRADIENT_TOL
from .errors import ConfigurationError

logger = logging.getLogger(__name__)


class Classification(str, Enum):
    G = "G"
    L = "L"
    O = "O"


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def distance_to_optimum(result, benchmark: Benchmark) -> np.ndarray:
    """Absolute per-dimension distance between *result* and the optimum."""
    x = np.asarray(result, dtype=np.float64)
    opt, _ = benchmark.optimum(x.shape[-1])
    return np.abs(x - opt)


def classify(result, benchmark: Benchmark, D: int) -> Classification:
    """
    Label *result* as G, L or O.

    Both tests are inclusive (``≤``).  The gradient test uses the analytic
    gradient of the benchmark.
    """
    x = np.asarray(result, dtype=np.float64)
    if x.shape != (D,):
        raise ConfigurationError(f"expected a result of shape ({D},), got {x.shape}")

    threshold = benchmark.g_threshold_factor * benchmark.side_length
    if np.all(distance_to_optimum(x, benchmark) <= threshold):
        return Classification.G
    if benchmark.name == "rosenbrock" and D <= 3:
        return Classification.O
    if np.all(np.abs(benchmark.gradient(x)) <= L_GRADIENT_TOL):
        return Classification.L
    return Classification.O


def _label_of(record, benchmark: Benchmark, D: int) -> Classification:
    if getattr(record, "classification", None) is not None:
        return Classification(record.classification)
    return classify(record.p_glob, benchmark, D)


# ---------------------------------------------------------------------------
# Precision
# ---------------------------------------------------------------------------

def precision(records: Iterable, benchmark: Benchmark, D: int) -> Optional[float]:
    """
    Mean offset ``f(p_glob) − f*`` over G-labelled records.

    Records without a stored label are classified on the fly.  Returns
    ``None`` when no record is labelled G.
    """
    _, f_star = benchmark.optimum(D)
    offsets = [
        r.f_glob - f_star
        for r in records
        if _label_of(r, benchmark, D) is Classification.G
    ]
    if not offsets:
        return None
    return float(np.mean(offsets))


# ---------------------------------------------------------------------------
# Cell summary
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionSummary:
    """
    Aggregated outcome of one (function, μ, dimension, variant) cell.

    ``g_count + l_count + o_count + failed == runs``.  ``bounds`` is the
    search interval the cell actually ran on.
    """

    function: str
    mu: Optional[float]
    dimension: int
    variant: str
    runs: int
    g_count: int
    l_count: int
    o_count: int
    failed: int
    precision: Optional[float]
    bounds: Optional[Tuple[float, float]] = None

    def __post_init__(self) -> None:
        if self.g_count + self.l_count + self.o_count + self.failed != self.runs:
            raise ValueError(
                f"counts do not add up for {self.function} D={self.dimension} "
                f"{self.variant}: {self.g_count}+{self.l_count}+{self.o_count}"
                f"+{self.failed} != {self.runs}"
            )
        if (self.precision is None) != (self.g_count == 0):
            raise ValueError("precision must be defined exactly when g_count >= 1")

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def summarize(
    records: List,
    benchmark: Benchmark,
    D: int,
    variant: str,
    runs: Optional[int] = None,
    failed: int = 0,
) -> PrecisionSummary:
    """
    Fold completed run records into a :class:`PrecisionSummary`.

    The fold only counts labels and averages offsets, so the order in which
    records arrive does not matter beyond floating-point summation order;
    callers pass records sorted by run index.
    """
    labels = [_label_of(r, benchmark, D) for r in records]
    runs = len(records) + failed if runs is None else runs
    prec = precision(records, benchmark, D)
    if prec is not None and not math.isfinite(prec):
        logger.warning("Non-finite precision for %s D=%d %s", benchmark.label, D, variant)
    return PrecisionSummary(
        function=benchmark.name,
        mu=benchmark.mu,
        dimension=int(D),
        variant=str(variant),
        runs=int(runs),
        g_count=labels.count(Classification.G),
        l_count=labels.count(Classification.L),
        o_count=labels.count(Classification.O),
        failed=int(failed),
        precision=prec,
        bounds=(float(benchmark.lower), float(benchmark.upper)),
    )
