"""
swarmlab/swarm.py — Particle swarm engine (classical, social-only, hybrid).

Each iteration runs in two phases.

1. **Move** — for every particle i in order, draw ``r_glob`` then ``r_loc``
   (D uniform values each) and apply the movement equations::

       v_i := a·v_i + b_glob·r_glob⊙(p_glob − x_i) + b_loc·r_loc⊙(p_i − x_i)
       x_i := x_i + v_i

   Position entries that leave the search box are resampled uniformly inside
   it (bound handling *Random*); velocity is left alone.
2. **Update attractors** — for every particle i in order: if
   ``f(x_i) ≤ f(p_i)`` then ``p_i := x_i``; if ``f(x_i) ≤ f(p_glob)`` then
   ``p_glob := x_i``.

Random stream layout
--------------------
One :class:`~swarmlab.rng.RandomStream` per run, seeded from
``SwarmConfig.seed``.  Initial positions take N·D values (particle by
particle).  Then, per iteration and per particle: D values for ``r_glob``,
D values for ``r_loc`` (drawn even when the effective ``b_loc`` is 0), then
one value per out-of-bounds dimension in ascending order.  Because ``r_loc``
is always drawn, a social-only run equals a classical run with ``b_loc = 0``
state for state, and a hybrid run equals the classical run up to its switch.

Public API
----------
Variant, SwarmConfig, VariantSchedule, Particle, SwarmState, RunRecord
init_swarm(config, benchmark, dimension, stream)       → SwarmState
effective_b_loc(config, schedule, iteration)           → float
handle_bounds(position, bounds, stream)                → ndarray
step(state, config, schedule, benchmark, stream)       → SwarmState
iterate(config, schedule, benchmark, dimension)        → iterator of SwarmState
run(config, schedule, benchmark, dimension, trace_potential) → RunRecord
"""

from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from .benchmarks import Benchmark
from .config import (
    DEFAULT_A,
    DEFAULT_B_GLOB,
    DEFAULT_B_LOC,
    DEFAULT_MAXITER,
    DEFAULT_PARTICLES,
    HYBRID_SWITCH_FRACTION,
)
from .errors import ConfigurationError, NumericFailure
from .potential import PotentialTrace, swarm_potential
from .rng import GENERATOR_ID, RandomStream, scale_uniform

logger = logging.getLogger(__name__)

_MAX_SEED: int = 2**64 - 1


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

class Variant(str, Enum):
    CLASSICAL = "classical"
    SOCIAL_ONLY = "social-only"
    HYBRID = "hybrid"

    @classmethod
    def parse(cls, text: "str | Variant") -> "Variant":
        """
        Resolve a variant name (case-insensitive, ``_`` accepted for ``-``).

        Raises
        ------
        ConfigurationError
            If *text* names no variant.
        """
        if isinstance(text, Variant):
            return text
        key = str(text).strip().lower().replace("_", "-")
        for v in cls:
            if v.value == key:
                return v
        raise ConfigurationError(
            f"unknown variant '{text}'; choose from {', '.join(v.value for v in cls)}"
        )


@dataclass(frozen=True)
class SwarmConfig:
    """
    PSO parameters of one run.

    ``b_loc`` is the configured local weight; the variant schedule decides
    which value is actually used in each iteration.
    """

    a: float = DEFAULT_A
    b_glob: float = DEFAULT_B_GLOB
    b_loc: float = DEFAULT_B_LOC
    variant: Variant = Variant.CLASSICAL
    n_particles: int = DEFAULT_PARTICLES
    maxiter: int = DEFAULT_MAXITER
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        for name in ("a", "b_glob", "b_loc"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigurationError(f"{name} must be finite, got {value!r}")
        if int(self.n_particles) < 1:
            raise ConfigurationError(f"n_particles must be >= 1, got {self.n_particles}")
        if int(self.maxiter) < 1:
            raise ConfigurationError(f"maxiter must be >= 1, got {self.maxiter}")
        if not 0 <= int(self.seed) <= _MAX_SEED:
            raise ConfigurationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def replace(self, **changes) -> "SwarmConfig":
        """Copy with *changes* applied and re-validated."""
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class VariantSchedule:
    """
    When the local attractor is switched off.

    ``switch_iteration`` is the last iteration that still uses the configured
    ``b_loc``: ``None`` for classical PSO (never switched), ``0`` for
    social-only PSO (switched off from the start), ``⌊maxiter/2⌋`` for the
    hybrid by default.
    """

    switch_iteration: Optional[int] = None

    def __post_init__(self) -> None:
        if self.switch_iteration is not None and self.switch_iteration < 0:
            raise ConfigurationError(f"switch_iteration must be >= 0, got {self.switch_iteration}")

    @classmethod
    def for_variant(
        cls,
        variant: "Variant | str",
        maxiter: int,
        switch_fraction: float = HYBRID_SWITCH_FRACTION,
        switch_at: Optional[int] = None,
    ) -> "VariantSchedule":
        """
        Schedule of *variant* for a run of *maxiter* iterations.

        Parameters
        ----------
        switch_fraction : float
            Hybrid only: the switch lands on ``floor(maxiter · switch_fraction)``.
        switch_at : int, optional
            Hybrid only: explicit last iteration with the configured ``b_loc``;
            takes precedence over *switch_fraction*.

        Raises
        ------
        ConfigurationError
            If *switch_at* is given for a non-hybrid variant, or the fraction
            lies outside [0, 1].
        """
        variant = Variant.parse(variant)
        if switch_at is not None and variant is not Variant.HYBRID:
            raise ConfigurationError(
                f"switch_at only applies to the hybrid variant, not {variant.value}"
            )
        if variant is Variant.CLASSICAL:
            return cls(None)
        if variant is Variant.SOCIAL_ONLY:
            return cls(0)
        if switch_at is not None:
            return cls(int(switch_at))
        if not 0.0 <= switch_fraction <= 1.0:
            raise ConfigurationError(f"switch_fraction must lie in [0, 1], got {switch_fraction}")
        return cls(int(math.floor(maxiter * switch_fraction)))

    @classmethod
    def for_config(cls, config: SwarmConfig) -> "VariantSchedule":
        """Default schedule for ``config.variant`` and ``config.maxiter``."""
        return cls.for_variant(config.variant, config.maxiter)

    def effective_b_loc(self, config: SwarmConfig, iteration: int) -> float:
        """Local weight in force during *iteration* (1-based)."""
        if not 1 <= iteration <= config.maxiter:
            raise ConfigurationError(
                f"iteration {iteration} outside 1..{config.maxiter}"
            )
        if config.variant is Variant.SOCIAL_ONLY:
            return 0.0
        if config.variant is Variant.HYBRID:
            switch = self.switch_iteration
            if switch is None:
                switch = config.maxiter // 2
            return config.b_loc if iteration <= switch else 0.0
        return config.b_loc


def effective_b_loc(config: SwarmConfig, schedule: VariantSchedule, iteration: int) -> float:
    """Module-level form of :meth:`VariantSchedule.effective_b_loc`."""
    return schedule.effective_b_loc(config, iteration)


# ---------------------------------------------------------------------------
# State
# ---------------------------------------------------------------------------

class Particle(NamedTuple):
    """Read-only view of one particle: position, velocity, local attractor."""

    x: np.ndarray
    v: np.ndarray
    p: np.ndarray


@dataclass(eq=False)
class SwarmState:
    """
    Positions, velocities and attractors of the whole swarm.

    Arrays are stored swarm-wide: ``x``, ``v`` and ``p`` have shape
    ``(N, D)``; ``fp`` caches ``f(p_i)``.  ``evaluations`` counts fitness
    calls made so far.
    """

    x: np.ndarray
    v: np.ndarray
    p: np.ndarray
    fp: np.ndarray
    p_glob: np.ndarray
    f_glob: float
    iteration: int = 0
    evaluations: int = 0

    @property
    def n_particles(self) -> int:
        return int(self.x.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.x.shape[1])

    def particle(self, i: int) -> Particle:
        """View of particle *i* (0-based)."""
        return Particle(self.x[i], self.v[i], self.p[i])

    @property
    def particles(self) -> List[Particle]:
        return [self.particle(i) for i in range(self.n_particles)]

    def identical(self, other: "SwarmState") -> bool:
        """Bit-for-bit equality of every array and scalar."""
        return (
            self.iteration == other.iteration
            and self.evaluations == other.evaluations
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.v, other.v)
            and np.array_equal(self.p, other.p)
            and np.array_equal(self.fp, other.fp)
            and np.array_equal(self.p_glob, other.p_glob)
            and self.f_glob == other.f_glob
        )


@dataclass(eq=False)
class RunRecord:
    """Outcome of one seeded run."""

    benchmark: str
    dimension: int
    variant: Variant
    seed: int
    p_glob: np.ndarray
    f_glob: float
    evaluations: int
    iterations: int
    potential: Optional[PotentialTrace] = None
    best_history: Optional[np.ndarray] = None
    classification: Optional[str] = None
    generator: str = GENERATOR_ID

    def with_classification(self, label: str) -> "RunRecord":
        """Copy carrying the G/L/O *label*."""
        return dataclasses.replace(self, classification=label)

    def identical(self, other: "RunRecord") -> bool:
        """Bit-for-bit equality, potential trace included."""
        same_trace = (self.potential is None) == (other.potential is None)
        if same_trace and self.potential is not None:
            same_trace = (
                np.array_equal(self.potential.iterations, other.potential.iterations)
                and np.array_equal(self.potential.phi, other.potential.phi)
            )
        return (
            same_trace
            and self.benchmark == other.benchmark
            and self.dimension == other.dimension
            and self.variant is other.variant
            and self.seed == other.seed
            and np.array_equal(self.p_glob, other.p_glob)
            and self.f_glob == other.f_glob
            and self.evaluations == other.evaluations
            and self.iterations == other.iterations
            and self.classification == other.classification
        )


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _fitness(benchmark: Benchmark, x: np.ndarray, iteration: int) -> np.ndarray:
    """Evaluate every row of *x*; non-finite input or output aborts the run."""
    finite_rows = np.all(np.isfinite(x), axis=1)
    if not finite_rows.all():
        i = int(np.argmin(finite_rows))
        raise NumericFailure.for_particle(i, iteration, float("nan"))
    with np.errstate(over="ignore", invalid="ignore"):
        f = np.asarray(benchmark.evaluate(x), dtype=np.float64)
    bad = ~np.isfinite(f)
    if bad.any():
        i = int(np.argmax(bad))
        raise NumericFailure.for_particle(i, iteration, float(f[i]))
    return f


def handle_bounds(
    position: np.ndarray,
    bounds: Tuple[float, float],
    stream: RandomStream,
) -> np.ndarray:
    """
    Resample out-of-bounds entries of *position* uniformly inside *bounds*.

    In-bounds entries are returned untouched and cost no draws; each violated
    dimension consumes one value from *stream*, in ascending dimension order.
    """
    lo, hi = bounds
    pos = np.array(position, dtype=np.float64)
    out = (pos < lo) | (pos > hi)
    k = int(np.count_nonzero(out))
    if k:
        pos[out] = scale_uniform(stream.random(k), lo, hi)
    return pos


# ---------------------------------------------------------------------------
# Algorithm
# ---------------------------------------------------------------------------

def init_swarm(
    config: SwarmConfig,
    benchmark: Benchmark,
    dimension: int,
    stream: Optional[RandomStream] = None,
) -> SwarmState:
    """
    Draw initial positions uniformly in the search box, zero velocities,
    ``p_i = x_i`` and ``p_glob`` = best ``p_i`` (lowest index on ties).
    """
    if int(dimension) < 1:
        raise ConfigurationError(f"dimension must be >= 1, got {dimension}")
    benchmark.check_dimension(dimension)
    stream = stream if stream is not None else RandomStream(config.seed)

    N, D = config.n_particles, int(dimension)
    x = stream.uniform(benchmark.lower, benchmark.upper, N * D).reshape(N, D)
    fx = _fitness(benchmark, x, iteration=0)
    g = int(np.argmin(fx))
    return SwarmState(
        x=x,
        v=np.zeros((N, D)),
        p=x.copy(),
        fp=fx,
        p_glob=x[g].copy(),
        f_glob=float(fx[g]),
        iteration=0,
        evaluations=N,
    )


def _move(
    state: SwarmState,
    config: SwarmConfig,
    b_loc: float,
    lo: float,
    hi: float,
    stream: RandomStream,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Phase 1 for all particles at once, consuming the stream in particle order.

    Particle i's random values start after everything particles 0..i−1
    consumed, which depends on how many of their entries left the box.  The
    offsets are found by fixed-point iteration: particle 0 always starts at
    0, so each pass fixes at least one more particle, and a pass that leaves
    the offsets unchanged is exactly the sequential consumption.
    """
    N, D = state.x.shape
    window = stream.peek(3 * N * D)
    base = 2 * D * np.arange(N)
    cols = np.arange(2 * D)

    inertia = config.a * state.v
    pull_glob = state.p_glob - state.x
    pull_loc = state.p - state.x

    shift = np.zeros(N, dtype=np.int64)
    while True:
        r = window[(base + shift)[:, None] + cols]
        v_new = inertia + config.b_glob * r[:, :D] * pull_glob + b_loc * r[:, D:] * pull_loc
        x_new = state.x + v_new
        out = (x_new < lo) | (x_new > hi)
        counts = out.sum(axis=1)
        new_shift = np.concatenate(([0], np.cumsum(counts)[:-1]))
        if np.array_equal(new_shift, shift):
            break
        shift = new_shift

    if out.any():
        rank = np.cumsum(out, axis=1) - 1
        idx = (base + shift + 2 * D)[:, None] + rank
        x_new[out] = scale_uniform(window[idx[out]], lo, hi)

    stream.advance(2 * N * D + int(counts.sum()))
    return x_new, v_new


def step(
    state: SwarmState,
    config: SwarmConfig,
    schedule: VariantSchedule,
    benchmark: Benchmark,
    stream: RandomStream,
) -> SwarmState:
    """
    Run one outer iteration and return the new state (*state* is not modified).

    Raises
    ------
    ConfigurationError
        If the iteration budget is already spent.
    NumericFailure
        If any particle's fitness is non-finite.
    """
    if state.iteration >= config.maxiter:
        raise ConfigurationError(
            f"iteration budget of {config.maxiter} already spent"
        )
    k = state.iteration + 1
    b_loc = schedule.effective_b_loc(config, k)

    x, v = _move(state, config, b_loc, benchmark.lower, benchmark.upper, stream)

    fx = _fitness(benchmark, x, iteration=k)
    improved = fx <= state.fp
    p = np.where(improved[:, None], x, state.p)
    fp = np.where(improved, fx, state.fp)

    # Sequential "≤" updates leave p_glob at the last particle attaining the minimum.
    N = fx.shape[0]
    j = N - 1 - int(np.argmin(fx[::-1]))
    if fx[j] <= state.f_glob:
        p_glob, f_glob = x[j].copy(), float(fx[j])
    else:
        p_glob, f_glob = state.p_glob, state.f_glob

    return SwarmState(
        x=x,
        v=v,
        p=p,
        fp=fp,
        p_glob=p_glob,
        f_glob=f_glob,
        iteration=k,
        evaluations=state.evaluations + N,
    )


def iterate(
    config: SwarmConfig,
    schedule: Optional[VariantSchedule],
    benchmark: Benchmark,
    dimension: int,
) -> Iterator[SwarmState]:
    """Yield the initial state, then the state after each of ``maxiter`` steps."""
    schedule = schedule if schedule is not None else VariantSchedule.for_config(config)
    stream = RandomStream(config.seed)
    state = init_swarm(config, benchmark, dimension, stream)
    yield state
    for _ in range(config.maxiter):
        state = step(state, config, schedule, benchmark, stream)
        yield state


def run(
    config: SwarmConfig,
    schedule: Optional[VariantSchedule],
    benchmark: Benchmark,
    dimension: int,
    trace_potential: bool = False,
) -> RunRecord:
    """
    Run PSO from initialisation through ``config.maxiter`` iterations.

    Parameters
    ----------
    schedule : VariantSchedule, optional
        Defaults to :meth:`VariantSchedule.for_config`.
    trace_potential : bool
        Record Φ and ``f(p_glob)`` once per iteration, after the attractor
        updates.

    Raises
    ------
    NumericFailure
        Propagated from :func:`step`.
    """
    phi_rows: List[np.ndarray] = []
    best: List[float] = []
    state: Optional[SwarmState] = None

    for state in iterate(config, schedule, benchmark, dimension):
        if trace_potential and state.iteration > 0:
            phi_rows.append(swarm_potential(state))
            best.append(state.f_glob)

    assert state is not None
    trace = None
    history = None
    if trace_potential:
        trace = PotentialTrace(
            iterations=np.arange(1, len(phi_rows) + 1, dtype=np.int64),
            phi=np.vstack(phi_rows),
        )
        history = np.asarray(best)

    logger.debug(
        "%s D=%d %s seed=%d: f(p_glob)=%r after %d evaluations",
        benchmark.label, dimension, config.variant.value, config.seed,
        state.f_glob, state.evaluations,
    )
    return RunRecord(
        benchmark=benchmark.label,
        dimension=int(dimension),
        variant=config.variant,
        seed=int(config.seed),
        p_glob=state.p_glob.copy(),
        f_glob=state.f_glob,
        evaluations=state.evaluations,
        iterations=state.iteration,
        potential=trace,
        best_history=history,
    )
