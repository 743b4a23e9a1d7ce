"""
swarmlab/benchmarks.py — Benchmark fitness functions with analytic gradients.

Seven non-shifted, non-rotated test functions, all with global minimum value
0.  Every function accepts either a single point of shape ``(D,)`` or a batch
of shape ``(..., D)`` and evaluates along the last axis, so the swarm can
score all particles in one call.

=====================  ============================================  ==============
Name                   Definition                                    Optimum
=====================  ============================================  ==============
sphere                 Σ x_d²                                        origin
rastrigin              10D + Σ (x_d² − 10 cos 2πx_d)                  origin
ackley                 −20 e^{−0.2√(Σx_d²/D)} − e^{Σcos 2πx_d / D}    origin
                       + 20 + e
griewank (μ)           μ Σ x_d² − Π cos(x_d/√d) + 1                   origin
rosenbrock             Σ 100(x_{d+1} − x_d²)² + (1 − x_d)²            (1, …, 1)
schwefel               418.9829 D − Σ x_d sin √|x_d|                  (s, …, s)
elliptic               Σ (10⁶)^{(d−1)/(D−1)} x_d²                      origin
=====================  ============================================  ==============

Public API
----------
Benchmark                       frozen description of one test function
get_benchmark(spec, mu, bounds) resolve ``"griewank:mu=0.00025"``-style names
benchmark_names()               canonical names, sorted
evaluate(benchmark, x)          function value(s)
gradient(benchmark, x)          analytic gradient(s)
optimum(benchmark, D)           (position, value) of the global minimum
bounds(benchmark)               per-dimension search interval
schwefel_root()                 1-D Schwefel minimiser s ≈ 420.968746
"""

from __future__ import annotations

import dataclasses
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .config import DEFAULT_BOUNDS, G_FACTOR, G_FACTOR_WIDE, GRIEWANK_MU
from .errors import ConfigurationError, NumericFailure

_TWO_PI: float = 2.0 * math.pi

# Schwefel offset; leaves a residual of about 1.3e-5 per dimension at the optimum.
_SCHWEFEL_OFFSET: float = 418.9829

ArrayFn = Callable[..., np.ndarray]


# ---------------------------------------------------------------------------
# Function definitions (last axis = dimension)
# ---------------------------------------------------------------------------

def _sphere(x: np.ndarray) -> np.ndarray:
    return np.sum(x * x, axis=-1)


def _sphere_grad(x: np.ndarray) -> np.ndarray:
    return 2.0 * x


def _rastrigin(x: np.ndarray) -> np.ndarray:
    D = x.shape[-1]
    return 10.0 * D + np.sum(x * x - 10.0 * np.cos(_TWO_PI * x), axis=-1)


def _rastrigin_grad(x: np.ndarray) -> np.ndarray:
    return 2.0 * x + 20.0 * math.pi * np.sin(_TWO_PI * x)


def _ackley(x: np.ndarray) -> np.ndarray:
    D = x.shape[-1]
    r = np.sqrt(np.sum(x * x, axis=-1) / D)
    c = np.sum(np.cos(_TWO_PI * x), axis=-1) / D
    return -20.0 * np.exp(-0.2 * r) - np.exp(c) + 20.0 + math.e


def _ackley_grad(x: np.ndarray) -> np.ndarray:
    D = x.shape[-1]
    r = np.sqrt(np.sum(x * x, axis=-1) / D)
    c = np.sum(np.cos(_TWO_PI * x), axis=-1) / D
    # The radial term has no derivative at the origin; 0 is its subgradient.
    safe_r = np.where(r > 0.0, r, 1.0)
    radial = np.where(r > 0.0, 4.0 * np.exp(-0.2 * r) / (D * safe_r), 0.0)
    return radial[..., None] * x + (np.exp(c) * _TWO_PI / D)[..., None] * np.sin(_TWO_PI * x)


def _griewank_scale(D: int) -> np.ndarray:
    return np.sqrt(np.arange(1, D + 1, dtype=np.float64))


def _griewank(x: np.ndarray, mu: float = GRIEWANK_MU) -> np.ndarray:
    D = x.shape[-1]
    return mu * np.sum(x * x, axis=-1) - np.prod(np.cos(x / _griewank_scale(D)), axis=-1) + 1.0


def _griewank_grad(x: np.ndarray, mu: float = GRIEWANK_MU) -> np.ndarray:
    D = x.shape[-1]
    scale = _griewank_scale(D)
    cos_terms = np.cos(x / scale)
    # Product over the other dimensions, without dividing by a possibly-zero cosine.
    others = np.stack(
        [np.prod(np.delete(cos_terms, d, axis=-1), axis=-1) for d in range(D)],
        axis=-1,
    )
    return 2.0 * mu * x + others * np.sin(x / scale) / scale


def _rosenbrock(x: np.ndarray) -> np.ndarray:
    head, tail = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (tail - head * head) ** 2 + (1.0 - head) ** 2, axis=-1)


def _rosenbrock_grad(x: np.ndarray) -> np.ndarray:
    head, tail = x[..., :-1], x[..., 1:]
    inner = tail - head * head
    g = np.zeros_like(x)
    g[..., :-1] += -400.0 * head * inner - 2.0 * (1.0 - head)
    g[..., 1:] += 200.0 * inner
    return g


def _schwefel(x: np.ndarray) -> np.ndarray:
    D = x.shape[-1]
    return _SCHWEFEL_OFFSET * D - np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def _schwefel_grad(x: np.ndarray) -> np.ndarray:
    # d/dx [x sin √|x|] = sin √|x| + ½ √|x| cos √|x|, which is 0 at x = 0.
    s = np.sqrt(np.abs(x))
    return -(np.sin(s) + 0.5 * s * np.cos(s))


def _elliptic_weights(D: int) -> np.ndarray:
    if D == 1:
        return np.ones(1)
    return 1e6 ** (np.arange(D, dtype=np.float64) / (D - 1))


def _elliptic(x: np.ndarray) -> np.ndarray:
    return np.sum(_elliptic_weights(x.shape[-1]) * x * x, axis=-1)


def _elliptic_grad(x: np.ndarray) -> np.ndarray:
    return 2.0 * _elliptic_weights(x.shape[-1]) * x


# name → (function, gradient, minimum dimension, G-threshold factor)
_REGISTRY: Dict[str, Tuple[ArrayFn, ArrayFn, int, float]] = {
    "ackley":     (_ackley, _ackley_grad, 1, G_FACTOR),
    "elliptic":   (_elliptic, _elliptic_grad, 1, G_FACTOR),
    "griewank":   (_griewank, _griewank_grad, 1, G_FACTOR),
    "rastrigin":  (_rastrigin, _rastrigin_grad, 1, G_FACTOR),
    "rosenbrock": (_rosenbrock, _rosenbrock_grad, 2, G_FACTOR_WIDE),
    "schwefel":   (_schwefel, _schwefel_grad, 1, G_FACTOR_WIDE),
    "sphere":     (_sphere, _sphere_grad, 1, G_FACTOR),
}

_ALIASES: Dict[str, str] = {
    "high-conditioned-elliptic": "elliptic",
    "highconditionedelliptic":   "elliptic",
    "hc-elliptic":               "elliptic",
}


@functools.lru_cache(maxsize=1)
def schwefel_root() -> float:
    """
    Return the minimiser ``s`` of the one-dimensional Schwefel function.

    Found once by Brent's method on the derivative of ``x sin √x`` inside
    ``[420, 422]`` and cached for the life of the process.
    """
    return float(
        brentq(lambda t: math.sin(math.sqrt(t)) + 0.5 * math.sqrt(t) * math.cos(math.sqrt(t)),
               420.0, 422.0, xtol=1e-9)
    )


# ---------------------------------------------------------------------------
# Benchmark description
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Benchmark:
    """
    One fitness function together with its search box and classifier settings.

    Attributes
    ----------
    name : str
        Canonical function name (see :func:`benchmark_names`).
    lower, upper : float
        Search interval, identical in every dimension.
    g_threshold_factor : float
        Share of the side length within which a result counts as the global
        optimum (0.0015, or 0.005 for Schwefel and Rosenbrock).
    min_dim : int
        Smallest supported dimension.
    mu : float or None
        Sphere weight of the Griewank family (1/4000 when left ``None``);
        must be ``None`` for other functions.
    """

    name: str
    lower: float
    upper: float
    g_threshold_factor: float
    min_dim: int = 1
    mu: Optional[float] = None

    def __post_init__(self) -> None:
        if self.name not in _REGISTRY:
            raise ConfigurationError(f"unknown benchmark '{self.name}'")
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ConfigurationError(f"{self.name}: bounds must be finite, got [{self.lower}, {self.upper}]")
        if not self.lower < self.upper:
            raise ConfigurationError(f"{self.name}: lower bound {self.lower} is not below upper bound {self.upper}")
        if self.mu is not None and (self.name != "griewank" or not (math.isfinite(self.mu) and self.mu > 0)):
            raise ConfigurationError(f"{self.name}: invalid mu {self.mu!r}")

    # -- identity ----------------------------------------------------------

    @property
    def label(self) -> str:
        """Round-trippable identifier, e.g. ``"griewank:mu=0.00025"``."""
        return f"{self.name}:mu={self.mu!r}" if self.mu is not None else self.name

    @property
    def side_length(self) -> float:
        """Per-dimension side length ``hi − lo`` of the search box."""
        return self.upper - self.lower

    def with_bounds(self, lower: float, upper: float) -> "Benchmark":
        """Same function on the interval [*lower*, *upper*] (re-validated)."""
        return dataclasses.replace(self, lower=float(lower), upper=float(upper))

    # -- validation ----------------------------------------------------------

    def check_dimension(self, D: int) -> None:
        """
        Reject dimensions the function is not defined for.

        Raises
        ------
        ConfigurationError
            If *D* is below ``min_dim`` (Rosenbrock needs D >= 2).
        """
        if int(D) < self.min_dim:
            raise ConfigurationError(
                f"{self.name} requires dimension >= {self.min_dim}, got {D}"
            )

    def _prepare(self, x) -> np.ndarray:
        arr = np.asarray(x, dtype=np.float64)
        if arr.ndim == 0:
            raise ConfigurationError(f"{self.name}: expected a vector, got a scalar")
        self.check_dimension(arr.shape[-1])
        if not np.all(np.isfinite(arr)):
            raise NumericFailure(f"{self.name}: non-finite input {arr!r}")
        return arr

    def _fns(self) -> Tuple[ArrayFn, ArrayFn]:
        f, g, _, _ = _REGISTRY[self.name]
        if self.name == "griewank":
            mu = GRIEWANK_MU if self.mu is None else self.mu
            return functools.partial(f, mu=mu), functools.partial(g, mu=mu)
        return f, g

    # -- evaluation --------------------------------------------------------

    def evaluate(self, x):
        """Function value of one point (``float``) or a batch (``ndarray``)."""
        arr = self._prepare(x)
        out = self._fns()[0](arr)
        return float(out) if arr.ndim == 1 else out

    def gradient(self, x) -> np.ndarray:
        """Analytic gradient, same shape as *x*."""
        return self._fns()[1](self._prepare(x))

    def optimum(self, D: int) -> Tuple[np.ndarray, float]:
        """Position and value of the global minimum in dimension *D*."""
        self.check_dimension(D)
        if self.name == "rosenbrock":
            pos = np.ones(D)
        elif self.name == "schwefel":
            pos = np.full(D, schwefel_root())
        else:
            pos = np.zeros(D)
        return pos, 0.0

    @property
    def bounds(self) -> Tuple[float, float]:
        """``(lower, upper)``, shared by every dimension."""
        return self.lower, self.upper


# ---------------------------------------------------------------------------
# Lookup
# ---------------------------------------------------------------------------

def benchmark_names() -> list[str]:
    """Canonical function names, sorted."""
    return sorted(_REGISTRY)


def _parse_mu(text: str) -> float:
    try:
        mu = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"malformed mu '{text}'") from exc
    if not (math.isfinite(mu) and mu > 0):
        raise ConfigurationError(f"mu must be positive, got '{text}'")
    return mu


def get_benchmark(
    spec: str,
    mu: Optional[float | str] = None,
    bounds: Optional[Tuple[float, float]] = None,
) -> Benchmark:
    """
    Resolve a benchmark from a name or spec string.

    Parameters
    ----------
    spec : str
        Function name, case-insensitive, optionally with parameters:
        ``"griewank:mu=0.00025"`` or ``"griewank:mu=1/4000"``.
    mu : float or str, optional
        Griewank sphere weight.  Supplying it for any other function is an
        error rather than being ignored.
    bounds : (lo, hi), optional
        Overrides the default search interval.

    Raises
    ------
    ConfigurationError
        Unknown name, malformed or misplaced μ, invalid bounds.
    """
    name, _, params = spec.strip().lower().partition(":")
    name = _ALIASES.get(name, name)
    if name not in _REGISTRY:
        raise ConfigurationError(
            f"unknown benchmark '{spec}'; choose from {', '.join(benchmark_names())}"
        )

    spec_mu: Optional[float] = None
    for item in filter(None, (p.strip() for p in params.split(","))):
        key, sep, value = item.partition("=")
        if key.strip() != "mu" or not sep:
            raise ConfigurationError(f"unrecognised benchmark parameter '{item}' in '{spec}'")
        spec_mu = _parse_mu(value)

    if mu is not None:
        if spec_mu is not None:
            raise ConfigurationError(f"mu given twice for '{spec}'")
        spec_mu = _parse_mu(str(mu))
    if spec_mu is not None and name != "griewank":
        raise ConfigurationError(f"mu is only meaningful for griewank, not {name}")
    if name == "griewank" and spec_mu is None:
        spec_mu = GRIEWANK_MU

    _, _, min_dim, factor = _REGISTRY[name]
    lo, hi = bounds if bounds is not None else DEFAULT_BOUNDS[name]
    return Benchmark(
        name=name,
        lower=float(lo),
        upper=float(hi),
        g_threshold_factor=factor,
        min_dim=min_dim,
        mu=spec_mu,
    )


# ---------------------------------------------------------------------------
# Functional interface
# ---------------------------------------------------------------------------

def evaluate(benchmark: Benchmark, x):
    """f(*x*) for a single point or each row of a batch; see :meth:`Benchmark.evaluate`."""
    return benchmark.evaluate(x)


def gradient(benchmark: Benchmark, x) -> np.ndarray:
    """Analytic gradient at *x*; see :meth:`Benchmark.gradient`."""
    return benchmark.gradient(x)


def optimum(benchmark: Benchmark, D: int) -> Tuple[np.ndarray, float]:
    """Optimum position and value in dimension *D*."""
    return benchmark.optimum(D)


def bounds(benchmark: Benchmark) -> Tuple[float, float]:
    """Search interval ``(lower, upper)``."""
    return benchmark.bounds
