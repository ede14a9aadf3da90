"""Projected-gradient solvers for sparsity-constrained problems.

``pg_solve`` is the constant-stepsize baseline.  ``npg_solve`` interleaves
three moves on a fixed schedule: a coordinate swap every ``N`` iterations, a
support change when the minimized support gap is small, and otherwise a
spectral-stepsize projected gradient step accepted by a nonmonotone
backtracking test against the worst of the last ``M+1`` objective values.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import as_vector, support_of
from .projection import project_sparse
from .sets import SymmetricSet
from .stationarity import (
    StationarityReport,
    check_strong_stationary,
    default_grid,
    minimize_support_gap,
)
from .subroutines import change_support, coordinate_swap

__all__ = [
    "SolverConfig",
    "IterationRecord",
    "IterateTrace",
    "bb_initial_stepsize",
    "max_backtracks",
    "pg_solve",
    "npg_solve",
    "benchmark_config",
]


@dataclass(frozen=True)
class SolverConfig:
    """Parameters of the nonmonotone solver.

    ``tbar`` bounds the support-gap stepsize search and must stay below the
    inverse Lipschitz constant; ``c1``/``c2`` are the sufficient-decrease
    coefficients of the support-change and backtracking tests; ``eta`` gates
    the support-change step; ``N``/``M``/``q`` set the move schedule and the
    nonmonotone window; ``tau_shrink`` is the backtracking shrink factor.
    """

    t_min: float
    t_max: float
    tbar: float
    c1: float
    c2: float
    eta: float
    N: int
    M: int
    q: int
    tau_shrink: float = 0.5
    f_tol: float = 1e-8
    max_iter: int = 100_000

    def __post_init__(self):
        if not 0 < self.t_min < self.t_max:
            raise ValueError("need 0 < t_min < t_max")
        if not 0 < self.tau_shrink < 1:
            raise ValueError("tau_shrink must be in (0, 1)")
        if not self.tbar > 0:
            raise ValueError("tbar must be positive")
        if not self.c1 > 0:
            raise ValueError("c1 must be positive")
        if not self.c2 > 0:
            raise ValueError("c2 must be positive")
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if not (isinstance(self.N, int) and self.N >= 3):
            raise ValueError("N must be an integer >= 3")
        if not (isinstance(self.M, int) and 0 <= self.M < self.N):
            raise ValueError("M must be an integer in [0, N)")
        if not (isinstance(self.q, int) and 0 < self.q < self.N):
            raise ValueError("q must be an integer in (0, N)")
        if self.f_tol < 0:
            raise ValueError("f_tol must be nonnegative")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")

    def validate_for(self, lipschitz: float) -> None:
        """Check the constraints that depend on the objective's Lipschitz constant."""
        if not self.tbar < 1.0 / lipschitz:
            raise ValueError("tbar must be below 1/lipschitz")
        if not self.c1 < 1.0 / self.tbar - lipschitz:
            raise ValueError("c1 must be below 1/tbar - lipschitz")


def benchmark_config(
    lipschitz: float,
    M: int,
    N: int,
    q: int,
    f_tol: float = 1e-8,
    max_iter: int = 100_000,
) -> SolverConfig:
    """Standard parameterization: tbar = 0.995/L, t_min = tbar, t_max = 1e8."""
    tbar = 0.995 / lipschitz
    c1 = min(0.995 * (1.0 / tbar - lipschitz), 1e-8)
    return SolverConfig(
        t_min=tbar,
        t_max=1e8,
        tbar=tbar,
        c1=c1,
        c2=1e-4,
        eta=1e3,
        N=N,
        M=M,
        q=q,
        tau_shrink=0.5,
        f_tol=f_tol,
        max_iter=max_iter,
    )


@dataclass(frozen=True)
class IterationRecord:
    """One accepted outer iteration.

    ``step_kind`` is one of ``swap``, ``support_change_accept_hx``,
    ``support_change_accept_tx``, ``projected_gradient``.  ``move_sq`` is the
    squared distance from the previous iterate.  For support-change steps that
    accept the edited point, ``projstep_value``/``projstep_dist_sq`` hold the
    objective at the plain projection iterate and the squared distance of the
    accepted point from it.
    """

    k: int
    step_kind: str
    f_value: float
    stepsize: float | None
    support: np.ndarray
    backtracks: int
    move_sq: float
    shape_gap: float
    nonneg_gap: float
    projstep_value: float | None = None
    projstep_dist_sq: float | None = None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "step_kind": self.step_kind,
            "f_value": self.f_value,
            "stepsize": self.stepsize,
            "support": self.support.tolist(),
            "backtracks": self.backtracks,
            "move_sq": self.move_sq,
            "shape_gap": self.shape_gap,
            "nonneg_gap": self.nonneg_gap,
            "projstep_value": self.projstep_value,
            "projstep_dist_sq": self.projstep_dist_sq,
        }


@dataclass
class IterateTrace:
    """Per-iteration records plus the final state and optional certificate."""

    records: list[IterationRecord]
    f_initial: float
    x_final: np.ndarray
    f_final: float
    iterations: int
    wall_time_seconds: float
    certificate: StationarityReport | None = None

    @property
    def f_values(self) -> np.ndarray:
        """Objective values of all iterates, starting point first."""
        return np.array([self.f_initial] + [r.f_value for r in self.records])

    def to_dict(self) -> dict:
        return {
            "records": [r.to_dict() for r in self.records],
            "f_initial": self.f_initial,
            "x_final": self.x_final.tolist(),
            "f_final": self.f_final,
            "iterations": self.iterations,
            "wall_time_seconds": self.wall_time_seconds,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def bb_initial_stepsize(x_cur, x_prev, g_cur, g_prev, t_min: float, t_max: float) -> float:
    """Spectral trial stepsize ||dx||^2 / |dx.dg|, clamped to [t_min, t_max].

    Returns ``t_max`` when the curvature product vanishes.
    """
    if t_min > t_max:
        raise ValueError("need t_min <= t_max")
    dx = as_vector(x_cur) - as_vector(x_prev)
    dg = as_vector(g_cur) - as_vector(g_prev)
    denom = abs(float(dx @ dg))
    if denom == 0.0:
        return float(t_max)
    return float(min(t_max, max(t_min, float(dx @ dx) / denom)))


def max_backtracks(lipschitz: float, c2: float, t_max: float, tau_shrink: float) -> int:
    """Worst-case number of stepsize shrinks before the nonmonotone test passes."""
    raw = -(math.log(lipschitz + c2) + math.log(t_max)) / math.log(tau_shrink) + 2.0
    return max(math.floor(raw), 1)


def _require_start(set_: SymmetricSet, s: int, x0: np.ndarray) -> None:
    if support_of(x0).size > s:
        raise ValueError("infeasible start: too many nonzeros")
    if not set_.contains(x0, 1e-10):
        raise ValueError("infeasible start: not in the constraint set")


def _record(
    k: int,
    kind: str,
    f_value: float,
    stepsize: float | None,
    x_new: np.ndarray,
    x_old: np.ndarray,
    set_: SymmetricSet,
    backtracks: int = 0,
    projstep_value: float | None = None,
    projstep_dist_sq: float | None = None,
) -> IterationRecord:
    shape_gap, nonneg_gap = set_.constraint_gaps(x_new)
    return IterationRecord(
        k=k,
        step_kind=kind,
        f_value=f_value,
        stepsize=stepsize,
        support=support_of(x_new),
        backtracks=backtracks,
        move_sq=float(np.sum((x_new - x_old) ** 2)),
        shape_gap=shape_gap,
        nonneg_gap=nonneg_gap,
        projstep_value=projstep_value,
        projstep_dist_sq=projstep_dist_sq,
    )


def pg_solve(
    obj,
    set_: SymmetricSet,
    s: int,
    x0,
    alpha: float,
    f_tol: float = 1e-8,
    max_iter: int = 100_000,
    certify: bool = True,
    certify_grid_points: int = 50,
    certify_tol: float = 1e-6,
) -> IterateTrace:
    """Constant-stepsize projected gradient: x <- project(x - alpha * grad).

    Stops when consecutive objective values differ by at most ``f_tol`` or
    after ``max_iter`` iterations.
    """
    x = as_vector(x0)
    _require_start(set_, s, x)
    if not 0 < alpha < 1.0 / obj.lipschitz:
        raise ValueError("alpha must lie in (0, 1/lipschitz)")

    records: list[IterationRecord] = []
    start = time.perf_counter()
    fx, g = obj.value_and_grad(x)
    f_initial = fx
    for k in range(max_iter):
        y = project_sparse(set_, s, x - alpha * g, certify_uniqueness=False).point
        fy, gy = obj.value_and_grad(y)
        records.append(_record(k, "projected_gradient", fy, alpha, y, x, set_))
        done = abs(fy - fx) <= f_tol
        x, fx, g = y, fy, gy
        if done:
            break
    wall = time.perf_counter() - start

    certificate = None
    if certify:
        certificate = check_strong_stationary(
            obj, set_, s, x, default_grid(alpha, certify_grid_points), certify_tol
        )
    return IterateTrace(
        records=records,
        f_initial=f_initial,
        x_final=x,
        f_final=fx,
        iterations=len(records),
        wall_time_seconds=wall,
        certificate=certificate,
    )


def npg_solve(
    obj,
    set_: SymmetricSet,
    s: int,
    x0,
    config: SolverConfig,
    certify: bool = True,
    certify_grid_points: int = 50,
    certify_tol: float = 1e-6,
) -> IterateTrace:
    """Nonmonotone projected gradient with swap and support-change moves.

    Every iteration takes exactly one of the moves:

    * ``k % N == 0``: try a coordinate swap; accept on strict decrease.
    * ``k % N == q`` and the minimized support gap is at most ``eta``: take the
      projection at the gap-minimizing stepsize, then prefer the
      support-changed point when it passes the ``c1`` decrease test.
    * otherwise: projected gradient at a spectral trial stepsize, halved until
      the objective drops ``c2/2 * move^2`` below the worst of the last
      ``M+1`` values.

    Iterates with empty (or full) support skip the first two moves.  Stops on
    the same consecutive-objective criterion as ``pg_solve``.
    """
    x = as_vector(x0)
    n = x.size
    _require_start(set_, s, x)
    lipschitz = obj.lipschitz
    config.validate_for(lipschitz)
    backtrack_cap = 2 * max_backtracks(lipschitz, config.c2, config.t_max, config.tau_shrink) + 50

    records: list[IterationRecord] = []
    start = time.perf_counter()
    fx, g = obj.value_and_grad(x)
    f_initial = fx
    f_hist = [fx]
    x_prev: np.ndarray | None = None
    g_prev: np.ndarray | None = None

    for k in range(config.max_iter):
        card = support_of(x).size
        degenerate = card == 0 or card == n
        x_new: np.ndarray | None = None
        f_new = math.nan
        rec: IterationRecord | None = None

        if k % config.N == 0 and not degenerate:
            y = coordinate_swap(obj, set_, x)
            if not np.array_equal(y, x):
                f_new = obj.value(y)
                rec = _record(k, "swap", f_new, None, y, x, set_)
                x_new = y
        elif k % config.N == config.q and not degenerate:
            gap = minimize_support_gap(set_, x, g, config.tbar)
            if gap.value <= config.eta:
                beta = gap.step
                xt = project_sparse(set_, s, x - beta * g, certify_uniqueness=False).point
                f_xt = obj.value(xt)
                xt_card = support_of(xt).size
                if 0 < xt_card < n:
                    xh = change_support(obj, set_, s, xt, beta)
                    f_xh = obj.value(xh)
                    dist_sq = float(np.sum((xh - xt) ** 2))
                    if f_xh <= f_xt - 0.5 * config.c1 * dist_sq:
                        rec = _record(
                            k,
                            "support_change_accept_hx",
                            f_xh,
                            beta,
                            xh,
                            x,
                            set_,
                            projstep_value=f_xt,
                            projstep_dist_sq=dist_sq,
                        )
                        x_new, f_new = xh, f_xh
                if x_new is None and beta > 0:
                    rec = _record(k, "support_change_accept_tx", f_xt, beta, xt, x, set_)
                    x_new, f_new = xt, f_xt

        if x_new is None:
            if x_prev is None:
                t_trial = min(config.t_max, max(config.t_min, 1.0))
            else:
                t_trial = bb_initial_stepsize(
                    x, x_prev, g, g_prev, config.t_min, config.t_max
                )
            f_ref = max(f_hist[-(config.M + 1):])
            backtracks = 0
            while True:
                w = project_sparse(set_, s, x - t_trial * g, certify_uniqueness=False).point
                fw = obj.value(w)
                if fw <= f_ref - 0.5 * config.c2 * float(np.sum((w - x) ** 2)):
                    break
                t_trial *= config.tau_shrink
                backtracks += 1
                if backtracks > backtrack_cap:
                    raise RuntimeError("backtracking failed to terminate")
            rec = _record(
                k, "projected_gradient", fw, t_trial, w, x, set_, backtracks=backtracks
            )
            x_new, f_new = w, fw

        records.append(rec)
        x_prev, g_prev = x, g
        f_prev = f_hist[-1]
        x = x_new
        f_hist.append(f_new)
        if abs(f_new - f_prev) <= config.f_tol:
            fx = f_new
            break
        fx = f_new
        g = obj.grad(x)
    wall = time.perf_counter() - start

    certificate = None
    if certify:
        certificate = check_strong_stationary(
            obj, set_, s, x, default_grid(config.tbar, certify_grid_points), certify_tol
        )
    return IterateTrace(
        records=records,
        f_initial=f_initial,
        x_final=x,
        f_final=fx,
        iterations=len(records),
        wall_time_seconds=wall,
        certificate=certificate,
    )
