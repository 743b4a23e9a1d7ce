"""
swarmlab/errors.py — Exception types raised by the swarmlab package.

The command-line front end maps these onto exit codes:

ConfigurationError  → 1   (bad parameters, unknown functions, bad plan files)
NumericFailure      → 2   (non-finite fitness or input during a run)
OSError             → 3   (I/O problems; raised as-is with the path attached)
"""

from __future__ import annotations

from typing import Optional


class ConfigurationError(ValueError):
    """Invalid parameters, benchmark names, dimensions or plan contents."""


class NumericFailure(ArithmeticError):
    """
    A fitness evaluation met or produced a non-finite value.

    Attributes
    ----------
    particle : int or None
        0-based index of the offending particle, when known.
    iteration : int or None
        Iteration in which the value appeared (``0`` = initialisation).
    value : float or None
        The offending fitness value.
    """

    def __init__(
        self,
        message: str,
        particle: Optional[int] = None,
        iteration: Optional[int] = None,
        value: Optional[float] = None,
    ) -> None:
        self.particle = particle
        self.iteration = iteration
        self.value = value
        super().__init__(message)

    @classmethod
    def for_particle(cls, particle: int, iteration: int, value: float) -> "NumericFailure":
        return cls(
            f"non-finite fitness {value!r} for particle {particle} in iteration {iteration}",
            particle=particle,
            iteration=iteration,
            value=value,
        )
