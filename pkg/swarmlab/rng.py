"""
swarmlab/rng.py — The single random stream consumed by one PSO run.

Every run owns exactly one :class:`RandomStream`, seeded from its
configuration.  The stream is the sequence of uniform ``[0, 1)`` doubles
produced by ``numpy.random.Generator(PCG64(seed))``; drawing ``n`` values at
once yields the same values as ``n`` single draws, so the stream may be
buffered freely.  Buffering lets the swarm step look ahead (:meth:`peek`),
work out how many values each particle actually needs, and only then commit
(:meth:`advance`).

Public API
----------
GENERATOR_ID                 identifier written into run metadata
RandomStream(seed)           buffered uniform stream
RandomStream.random(n)       consume and return *n* values
RandomStream.uniform(lo, hi) consume values scaled to ``[lo, hi)``
RandomStream.peek(n)         return the next *n* values without consuming
RandomStream.advance(n)      consume *n* values previously peeked
"""

from __future__ import annotations

import numpy as np

GENERATOR_ID: str = "numpy.PCG64"

_MAX_SEED: int = 2**64 - 1

# Values fetched from the generator per refill (on top of the request).
_CHUNK: int = 4096


class RandomStream:
    """Seeded, buffered stream of uniform doubles."""

    def __init__(self, seed: int) -> None:
        seed = int(seed)
        if not 0 <= seed <= _MAX_SEED:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self._seed = seed
        self._gen = np.random.Generator(np.random.PCG64(seed))
        self._buf = np.empty(0, dtype=np.float64)
        self._pos = 0
        self._consumed = 0

    @property
    def seed(self) -> int:
        return self._seed

    @property
    def consumed(self) -> int:
        """Number of values consumed since construction."""
        return self._consumed

    def _ensure(self, n: int) -> None:
        avail = self._buf.size - self._pos
        if avail >= n:
            return
        fresh = self._gen.random(n - avail + _CHUNK)
        self._buf = np.concatenate([self._buf[self._pos:], fresh])
        self._pos = 0

    def peek(self, n: int) -> np.ndarray:
        """Return (a read-only view of) the next *n* values without consuming them."""
        self._ensure(n)
        view = self._buf[self._pos : self._pos + n]
        view.flags.writeable = False
        return view

    def advance(self, n: int) -> None:
        """Consume *n* values."""
        if n < 0:
            raise ValueError("cannot advance by a negative count")
        self._ensure(n)
        self._pos += n
        self._consumed += n

    def random(self, n: int) -> np.ndarray:
        """Consume and return the next *n* values as a fresh array."""
        out = self.peek(n).copy()
        self.advance(n)
        return out

    def uniform(self, lo: np.ndarray | float, hi: np.ndarray | float, n: int) -> np.ndarray:
        """Consume *n* values mapped affinely onto ``[lo, hi)``."""
        return scale_uniform(self.random(n), lo, hi)


def scale_uniform(u: np.ndarray, lo: np.ndarray | float, hi: np.ndarray | float) -> np.ndarray:
    """Map uniform ``[0, 1)`` values onto ``[lo, hi)``; the only scaling used anywhere."""
    return lo + (hi - lo) * u
