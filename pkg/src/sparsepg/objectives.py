"""Smooth loss functions with exact gradients and Lipschitz constants.

Solvers accept any object exposing ``value``, ``grad``, ``value_and_grad``,
``lipschitz`` and ``dim``; the two families below cover least squares and
logistic regression.
"""

from __future__ import annotations

import numpy as np

from .core import as_vector

__all__ = ["LeastSquares", "Logistic"]


def _top_singular_value_sq(mat: np.ndarray, max_iter: int = 5000, rtol: float = 1e-13) -> float:
    """Largest squared singular value by power iteration on the Gram operator.

    Runs until the Rayleigh quotient stalls at relative change ``rtol``; the
    iteration count must cover spectra with small relative gaps.
    """
    n = mat.shape[1]
    v = np.ones(n) / np.sqrt(n)
    # deterministic perturbation so the start is never orthogonal to the top vector
    v += np.linspace(0.0, 1.0, n) * 1e-3
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = mat.T @ (mat @ v)
        new_lam = float(v @ w)
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            return 0.0
        v = w / nrm
        if abs(new_lam - lam) <= rtol * max(1.0, abs(new_lam)):
            return new_lam
        lam = new_lam
    return lam


def _sigmoid(z: np.ndarray) -> np.ndarray:
    # exp(-logaddexp(0, -z)) = 1/(1+exp(-z)), stable in both tails
    return np.exp(-np.logaddexp(0.0, -z))


class LeastSquares:
    """f(x) = 0.5 * ||A x - b||^2."""

    def __init__(self, A, b):
        self.A = np.asarray(A, dtype=np.float64)
        if self.A.ndim != 2:
            raise ValueError("A must be a matrix")
        self.b = as_vector(b, self.A.shape[0])
        self._lipschitz: float | None = None

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    def value(self, x) -> float:
        r = self.A @ as_vector(x, self.dim) - self.b
        return 0.5 * float(r @ r)

    def grad(self, x) -> np.ndarray:
        r = self.A @ as_vector(x, self.dim) - self.b
        return self.A.T @ r

    def value_and_grad(self, x) -> tuple[float, np.ndarray]:
        r = self.A @ as_vector(x, self.dim) - self.b
        return 0.5 * float(r @ r), self.A.T @ r

    @property
    def lipschitz(self) -> float:
        """Squared largest singular value of A."""
        if self._lipschitz is None:
            self._lipschitz = _top_singular_value_sq(self.A)
        return self._lipschitz


class Logistic:
    """f(x) = sum_i log(1 + exp(-b_i <a_i, x>)) with labels b_i in {-1, +1}.

    Rows of ``A`` are the samples a_i.  Evaluation uses logaddexp so large
    margins neither overflow nor lose the tail.
    """

    def __init__(self, A, labels):
        self.A = np.asarray(A, dtype=np.float64)
        if self.A.ndim != 2:
            raise ValueError("A must be a matrix")
        self.labels = as_vector(labels, self.A.shape[0])
        if not np.all(np.isin(self.labels, (-1.0, 1.0))):
            raise ValueError("labels must be -1 or +1")
        self._lipschitz: float | None = None

    @property
    def dim(self) -> int:
        return self.A.shape[1]

    def value(self, x) -> float:
        z = self.labels * (self.A @ as_vector(x, self.dim))
        return float(np.sum(np.logaddexp(0.0, -z)))

    def grad(self, x) -> np.ndarray:
        z = self.labels * (self.A @ as_vector(x, self.dim))
        return -(self.A.T @ (self.labels * _sigmoid(-z)))

    def value_and_grad(self, x) -> tuple[float, np.ndarray]:
        z = self.labels * (self.A @ as_vector(x, self.dim))
        value = float(np.sum(np.logaddexp(0.0, -z)))
        return value, -(self.A.T @ (self.labels * _sigmoid(-z)))

    @property
    def lipschitz(self) -> float:
        """Squared spectral norm of the label-scaled sample matrix."""
        if self._lipschitz is None:
            self._lipschitz = _top_singular_value_sq(self.A * self.labels[:, None])
        return self._lipschitz
