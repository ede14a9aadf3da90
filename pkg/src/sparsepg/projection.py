"""Euclidean projection onto the intersection of a sparsity level with a symmetric set.

The projection picks the ``s`` coordinates with the largest ranking values,
sub-projects onto the restricted set there, and zeros the rest.  The result is
always a member of the (possibly multi-valued) projection; two sufficient
conditions certify when it is the unique one.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import as_vector, sorting_permutation, support_of
from .sets import SymmetricSet

__all__ = ["SparseProjection", "project_sparse", "certify_unique", "brute_force_project"]

_BRUTE_MAX_N = 20
_BRUTE_MAX_COMBOS = 10**6


@dataclass(frozen=True)
class SparseProjection:
    """A projection result: the point, the support it was built on, and a uniqueness flag."""

    point: np.ndarray
    chosen_support: np.ndarray
    certified_unique: bool


def _check_sparsity_level(s: int, n: int) -> None:
    if not 1 <= s <= n - 1:
        raise ValueError(f"sparsity level must satisfy 1 <= s <= n-1, got s={s}, n={n}")


def project_sparse(
    set_: SymmetricSet, s: int, x, certify_uniqueness: bool = True
) -> SparseProjection:
    """Project ``x`` onto {cardinality <= s} intersected with ``set_``.

    The chosen support is the first ``s`` indices of the stable non-ascending
    sort of the ranking values; any sorting permutation yields a valid
    projection, the stable one makes the choice deterministic.  Pass
    ``certify_uniqueness=False`` to skip the uniqueness certificate (the flag
    comes back False); solver inner loops do this.
    """
    x = as_vector(x)
    _check_sparsity_level(s, x.size)
    order = sorting_permutation(set_.ranking_values(x))
    support = np.sort(order[:s])
    point = np.zeros_like(x)
    point[support] = set_.project_sub(x[support])
    proj = SparseProjection(point, support, False)
    if not certify_uniqueness:
        return proj
    return SparseProjection(point, support, certify_unique(set_, s, x, proj))


def certify_unique(
    set_: SymmetricSet, s: int, x, proj: SparseProjection, tol: float | None = None
) -> bool:
    """True if ``proj`` is certifiably the only projection of ``x``.

    Certifies when the projected point has fewer than ``s`` nonzeros, or when
    the smallest ranking value of ``x`` on its support beats the largest one off
    it by more than ``tol``.  False means "not certified", not "non-unique".
    """
    x = as_vector(x)
    _check_sparsity_level(s, x.size)
    supp = support_of(proj.point)
    if supp.size < s:
        return True
    if tol is None:
        tol = 1e-10 * (1.0 + float(np.max(np.abs(x))))
    ranked = set_.ranking_values(x)
    mask = np.zeros(x.size, dtype=bool)
    mask[supp] = True
    return float(np.min(ranked[mask])) > float(np.max(ranked[~mask])) + tol


def brute_force_project(set_: SymmetricSet, s: int, x) -> list[SparseProjection]:
    """Testing oracle: enumerate every size-``s`` support and keep all minimizers.

    Returns the distinct points attaining the minimal squared distance within
    relative tolerance 1e-10.  Guarded to small instances.
    """
    x = as_vector(x)
    n = x.size
    _check_sparsity_level(s, n)
    if n > _BRUTE_MAX_N:
        raise ValueError(f"brute force limited to n <= {_BRUTE_MAX_N}, got n={n}")
    if math.comb(n, s) > _BRUTE_MAX_COMBOS:
        raise ValueError("too many supports to enumerate")

    candidates: list[tuple[float, np.ndarray, np.ndarray]] = []
    best = np.inf
    for combo in itertools.combinations(range(n), s):
        support = np.array(combo, dtype=np.intp)
        point = np.zeros_like(x)
        point[support] = set_.project_sub(x[support])
        dist = float(np.sum((point - x) ** 2))
        candidates.append((dist, point, support))
        best = min(best, dist)

    cutoff = best + 1e-10 * (1.0 + best)
    winners: list[SparseProjection] = []
    for dist, point, support in candidates:
        if dist <= cutoff and not any(
            np.allclose(point, w.point, rtol=0.0, atol=1e-12) for w in winners
        ):
            winners.append(SparseProjection(point, support, False))
    return winners
