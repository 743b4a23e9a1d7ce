"""
swarmlab/potential.py — Swarm and particle potential.

The potential measures, per dimension, how far the swarm (or one particle)
can still travel away from the global attractor.  A potential decaying
towards zero means the swarm is converging.

Swarm potential, for each dimension d::

    Φ^d = sqrt( Σ_i  2.5·|v_i^d| + |p_glob^d − x_i^d| )

Particle potential of particle i::

    Ψ_i^d = a·|v_i^d| + b_glob·|p_glob^d − x_i^d| + b_loc·|p_i^d − x_i^d|

Public API
----------
swarm_potential(state)                          → ndarray (D,)
particle_potential(state, i, config, schedule)  → ndarray (D,)
PotentialTrace                                  per-iteration Φ of one run
PotentialTrace.to_frame() / to_csv() / read_csv()
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Optional

import numpy as np
import pandas as pd

if TYPE_CHECKING:
    from .swarm import SwarmConfig, SwarmState, VariantSchedule

# Velocity weight inside Φ.
_VELOCITY_WEIGHT: float = 2.5

TRACE_COLUMNS: list[str] = ["iteration", "dim", "phi"]


# ---------------------------------------------------------------------------
# Potentials
# ---------------------------------------------------------------------------

def potential_from_arrays(x: np.ndarray, v: np.ndarray, p_glob: np.ndarray) -> np.ndarray:
    """Φ from raw ``(N, D)`` positions/velocities and the ``(D,)`` global attractor."""
    return np.sqrt(np.sum(_VELOCITY_WEIGHT * np.abs(v) + np.abs(p_glob - x), axis=0))


def swarm_potential(state: "SwarmState") -> np.ndarray:
    """Swarm potential Φ of *state*, one entry per dimension."""
    return potential_from_arrays(state.x, state.v, state.p_glob)


def particle_potential(
    state: "SwarmState",
    i: int,
    config: "SwarmConfig",
    schedule: Optional["VariantSchedule"] = None,
) -> np.ndarray:
    """
    Potential Ψ of the single particle *i* (0-based).

    Uses the configured weights.  When *schedule* is given, the local weight
    is the effective one for ``state.iteration`` instead (for the initial
    state, the weight of iteration 1), so a social-only run, or a hybrid run
    past its switch point, reports Ψ with ``b_loc = 0``.

    Raises
    ------
    IndexError
        If *i* is not a valid particle index.
    """
    n = state.x.shape[0]
    if not 0 <= i < n:
        raise IndexError(f"particle index {i} out of range for a swarm of {n}")
    b_loc = config.b_loc
    if schedule is not None:
        b_loc = schedule.effective_b_loc(config, max(state.iteration, 1))
    x = state.x[i]
    return (
        config.a * np.abs(state.v[i])
        + config.b_glob * np.abs(state.p_glob - x)
        + b_loc * np.abs(state.p[i] - x)
    )


# ---------------------------------------------------------------------------
# Trace
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PotentialTrace:
    """
    Φ sampled once per iteration (after the attractor updates).

    Attributes
    ----------
    iterations : ndarray of int, shape (T,)
        Iteration numbers, 1-based.
    phi : ndarray, shape (T, D)
        Φ per iteration and dimension.
    """

    iterations: np.ndarray
    phi: np.ndarray

    def __len__(self) -> int:
        return int(self.iterations.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.phi.shape[1])

    def total(self) -> np.ndarray:
        """Σ_d Φ^d per iteration."""
        return self.phi.sum(axis=1)

    def to_frame(self) -> pd.DataFrame:
        """Long format: one row per (iteration, dim), dims numbered from 1."""
        T, D = self.phi.shape
        return pd.DataFrame({
            "iteration": np.repeat(self.iterations, D),
            "dim":       np.tile(np.arange(1, D + 1), T),
            "phi":       self.phi.reshape(-1),
        }, columns=TRACE_COLUMNS)

    def to_csv(self, path: "str | Path") -> Path:
        """Write the long-format trace; floats keep 17 significant digits."""
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            self.to_frame().to_csv(path, index=False, float_format="%.17g")
        except OSError as exc:
            raise OSError(f"could not write potential trace to {path}: {exc}") from exc
        return path

    @classmethod
    def read_csv(cls, path: "str | Path") -> "PotentialTrace":
        """
        Inverse of :meth:`to_csv`.

        Raises
        ------
        ValueError
            If the header is not ``iteration,dim,phi``.
        """
        df = pd.read_csv(path, float_precision="round_trip")
        if list(df.columns) != TRACE_COLUMNS:
            raise ValueError(f"{path}: expected columns {TRACE_COLUMNS}, got {list(df.columns)}")
        D = int(df["dim"].max()) if len(df) else 0
        wide = df.pivot(index="iteration", columns="dim", values="phi").sort_index()
        return cls(
            iterations=wide.index.to_numpy(dtype=np.int64),
            phi=wide.to_numpy(dtype=np.float64).reshape(len(wide), D),
        )
