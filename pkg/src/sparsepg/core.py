"""Shared low-level primitives: vectors, supports, sorting, seeded randomness."""

from __future__ import annotations

import numpy as np

__all__ = [
    "DegenerateSupportError",
    "as_vector",
    "support_of",
    "sorting_permutation",
    "make_rng",
]


class DegenerateSupportError(ValueError):
    """Raised when an operation needs 0 < ||x||_0 < n but got an empty or full support."""


def as_vector(x, n: int | None = None) -> np.ndarray:
    """Coerce ``x`` to a 1-D float64 array, rejecting NaN/Inf entries."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {v.shape}")
    if n is not None and v.size != n:
        raise ValueError(f"expected length {n}, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def support_of(x: np.ndarray, tol: float = 0.0) -> np.ndarray:
    """Indices i with |x_i| > tol, ascending."""
    if tol == 0.0:
        return np.nonzero(x)[0]
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return np.nonzero(np.abs(x) > tol)[0]


def sorting_permutation(v: np.ndarray) -> np.ndarray:
    """Permutation sigma with v[sigma] non-ascending; ties broken by ascending index."""
    return np.argsort(-np.asarray(v, dtype=np.float64), kind="stable")


def make_rng(seed: int) -> np.random.Generator:
    """Seeded PCG64 generator; identical seeds give identical streams on all platforms."""
    return np.random.Generator(np.random.PCG64(seed))
