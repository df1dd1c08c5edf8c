"""Adjacency spectral radius and Perron vector by shifted power iteration."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .graph import Graph, GraphError

DEFAULT_TOL = 1e-12
MAX_ITER = 1_000_000
SHIFT = 1.0


class ConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpectralResult:
    rho: float
    perron: np.ndarray
    residual: float
    iterations: int


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> SpectralResult:
    """Largest adjacency eigenvalue of a connected graph and its unit Perron vector.

    Power iteration runs on ``A + I`` from the all-ones vector; the shift
    keeps the dominant eigenvalue strictly dominant for bipartite graphs.
    Iteration stops once the Rayleigh quotient moves by less than ``tol``
    *and* the max-norm residual ``|A x - rho x|`` is at most ``tol``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if g.n < 2 or not g.is_connected:
        raise GraphError("spectral_radius needs a connected graph on at least 2 vertices")
    a = g.adjacency_matrix()
    m = a + SHIFT * np.eye(g.n)
    x = np.ones(g.n) / np.sqrt(g.n)
    mu = float(x @ m @ x)
    for it in range(1, max_iter + 1):
        y = m @ x
        x = y / np.linalg.norm(y)
        ax = a @ x
        rho = float(x @ ax)
        residual = float(np.max(np.abs(ax - rho * x)))
        mu_new = rho + SHIFT
        if abs(mu_new - mu) < tol and residual <= tol:
            return SpectralResult(rho, x, residual, it)
        mu = mu_new
    raise ConvergenceError(f"power iteration did not converge in {max_iter} steps (residual {residual:.3e})")


def verify_eigenpair(g: Graph, rho: float, x, tol: float = 1e-9) -> bool:
    """True iff ``|A x - rho x|_inf <= tol * max(1, |rho|)`` and ``x`` has one sign."""
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise GraphError(f"vector length {x.shape} does not match {g.n} vertices")
    a = g.adjacency_matrix()
    if np.max(np.abs(a @ x - rho * x)) > tol * max(1.0, abs(rho)):
        return False
    return bool(np.all(x > 0) or np.all(x < 0))


class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    INDISTINGUISHABLE = "indistinguishable"


def compare_spectral_radii(g1: Graph, g2: Graph, margin: float = 1e-9,
                           tol: float = DEFAULT_TOL) -> Ordering:
    if margin < 2 * tol:
        raise ValueError("margin must be at least the combined solver tolerance")
    d = spectral_radius(g1, tol).rho - spectral_radius(g2, tol).rho
    if d > margin:
        return Ordering.GREATER
    if d < -margin:
        return Ordering.LESS
    return Ordering.INDISTINGUISHABLE
