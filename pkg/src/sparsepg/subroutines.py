"""Support-editing moves: swap one coordinate, or exchange a block of the support.

Both moves keep the point inside the sparse symmetric feasible set: swapping
transplants a single coordinate value (a coordinate permutation, plus a sign
flip for sign-free sets), and the support change rebuilds the point by
sub-projecting a gradient step on the edited support.
"""

from __future__ import annotations

import numpy as np

from .core import DegenerateSupportError, as_vector, support_of
from .sets import SymmetricSet

__all__ = ["coordinate_swap", "change_support"]


def _split_support(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    supp = support_of(x)
    if supp.size == 0 or supp.size == x.size:
        raise DegenerateSupportError("need 0 < ||x||_0 < n")
    mask = np.ones(x.size, dtype=bool)
    mask[supp] = False
    return supp, np.nonzero(mask)[0]


def coordinate_swap(obj, set_: SymmetricSet, x) -> np.ndarray:
    """Move the weakest support coordinate to the most promising empty one.

    Among the support coordinates with the smallest ranking value, picks the
    one whose negative-gradient ranking is smallest, and transplants its value
    to the off-support coordinate with the largest negative-gradient ranking
    (trying both signs for sign-free sets).  Returns the swapped point only on
    a strict objective decrease, otherwise ``x`` unchanged.  All ties break
    toward the lowest index.
    """
    x = as_vector(x)
    supp, comp = _split_support(x)
    grad = obj.grad(x)
    ranked_x = set_.ranking_values(x)
    ranked_neg_grad = set_.ranking_values(-grad)

    on_vals = ranked_x[supp]
    level = supp[on_vals == np.min(on_vals)]
    i = int(level[np.argmin(ranked_neg_grad[level])])
    j = int(comp[np.argmax(ranked_neg_grad[comp])])

    fx = obj.value(x)
    plus = x.copy()
    plus[j] = x[i]
    plus[i] = 0.0
    if set_.kind == "nonnegative":
        return plus if fx > obj.value(plus) else x

    minus = x.copy()
    minus[j] = -x[i]
    minus[i] = 0.0
    f_plus = obj.value(plus)
    f_minus = obj.value(minus)
    if fx > min(f_plus, f_minus):
        return plus if f_plus <= f_minus else minus
    return x


def change_support(obj, set_: SymmetricSet, s: int, x, t: float) -> np.ndarray:
    """Exchange the weakest support block for the strongest off-support block.

    Takes the gradient step ``a = x - t*grad``, drops the support coordinates
    where the ranking of ``a`` is minimal, brings in the off-support ones where
    it is maximal (equally many, lowest indices first), and rebuilds the point
    by sub-projecting ``a`` on the edited support.  The output support always
    differs from ``supp(x)`` and has at most as many elements.
    """
    x = as_vector(x)
    if t < 0:
        raise ValueError("t must be nonnegative")
    supp, comp = _split_support(x)
    if supp.size > s:
        raise ValueError(f"input has {supp.size} nonzeros, exceeds sparsity level {s}")
    a = x - t * obj.grad(x)
    ranked = set_.ranking_values(a)

    on_vals = ranked[supp]
    drop_pool = supp[on_vals == np.min(on_vals)]
    off_vals = ranked[comp]
    add_pool = comp[off_vals == np.max(off_vals)]
    k = min(drop_pool.size, add_pool.size)
    dropped = drop_pool[:k]
    added = add_pool[:k]

    new_support = np.sort(np.concatenate([np.setdiff1d(supp, dropped), added]))
    y = np.zeros_like(x)
    y[new_support] = set_.project_sub(a[new_support])
    return y
