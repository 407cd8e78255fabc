"""Q-index via power iteration, and a cyclic Jacobi solver used as a cross-check."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import AnyGraph, GraphError, is_connected, signless_laplacian

DEFAULT_TOL = 1e-10
MAX_ITER = 10**6


class DisconnectedGraphError(GraphError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, last: "PerronResult"):
        super().__init__(msg)
        self.last = last


@dataclass(frozen=True)
class PerronResult:
    q: float
    x: np.ndarray
    residual: float
    iterations: int


def power_iteration(Q: np.ndarray, tol: float = DEFAULT_TOL,
                    max_iter: int = MAX_ITER) -> PerronResult:
    """Largest eigenpair of a non-negative symmetric PSD matrix, started from all-ones.

    Stops once successive Rayleigh quotients differ by < tol and the
    residual ||Qx - qx|| is below sqrt(tol).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = Q.shape[0]
    x = np.full(n, 1.0 / math.sqrt(n))
    q_prev = math.inf
    q, res = 0.0, math.inf
    res_tol = math.sqrt(tol)
    for it in range(1, max_iter + 1):
        y = Q @ x
        q = float(x @ y)
        res = float(np.linalg.norm(y - q * x))
        if abs(q - q_prev) < tol and res < res_tol:
            return PerronResult(q, x, res, it)
        nrm = np.linalg.norm(y)
        if nrm == 0.0:
            return PerronResult(0.0, x, 0.0, it)
        x = y / nrm
        q_prev = q
    raise ConvergenceError(f"no convergence in {max_iter} iterations",
                           PerronResult(q, x, res, max_iter))


def qindex(g: AnyGraph, tol: float = DEFAULT_TOL, max_iter: int = MAX_ITER) -> PerronResult:
    if g.n < 1:
        raise GraphError("empty graph")
    if not is_connected(g):
        raise DisconnectedGraphError("Q-index with a Perron vector needs a connected graph")
    if g.n == 1:
        return PerronResult(0.0, np.ones(1), 0.0, 0)
    return power_iteration(signless_laplacian(g), tol, max_iter)


def jacobi_eigenvalues(A: np.ndarray, off_tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, descending."""
    a = np.array(A, dtype=float)
    n = a.shape[0]
    if n == 0:
        return a.diagonal().copy()
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off < off_tol:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if apr == 0.0:
                    continue
                diff = a[r, r] - a[p, p]
                if abs(apr) < 1e-18 * (abs(a[p, p]) + abs(a[r, r])):
                    # Below rounding of the diagonal; dropping it changes nothing.
                    a[p, r] = a[r, p] = 0.0
                    continue
                if abs(apr) < 1e-150 * abs(diff):
                    t = apr / diff
                else:
                    theta = diff / (2.0 * apr)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                ar = a[:, r].copy()
                a[:, p] = c * ap - s * ar
                a[:, r] = s * ap + c * ar
                ap = a[p, :].copy()
                ar = a[r, :].copy()
                a[p, :] = c * ap - s * ar
                a[r, :] = s * ap + c * ar
    else:
        raise ConvergenceError("Jacobi sweeps exhausted", PerronResult(float("nan"), np.empty(0), off, max_sweeps))
    return np.sort(np.diag(a))[::-1]


def full_spectrum(g: AnyGraph) -> list[float]:
    return [float(v) for v in jacobi_eigenvalues(signless_laplacian(g))]


def quadratic_form(g: AnyGraph, x) -> float:
    """x^T Q x evaluated edge-wise as the sum of (x_u + x_v)^2."""
    x = np.asarray(x, dtype=float)
    if not g.edges:
        return 0.0
    e = np.array(sorted(g.edges), dtype=np.intp)
    return float(np.sum((x[e[:, 0]] + x[e[:, 1]]) ** 2))


def rayleigh(g: AnyGraph, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise ValueError(f"vector length {x.shape} does not match n={g.n}")
    xx = float(x @ x)
    if xx == 0.0:
        raise ValueError("Rayleigh quotient of the zero vector")
    via_matrix = float(x @ signless_laplacian(g) @ x)
    via_edges = quadratic_form(g, x)
    if not math.isclose(via_matrix, via_edges, rel_tol=1e-12, abs_tol=1e-12):
        raise ArithmeticError(f"quadratic form mismatch {via_matrix!r} vs {via_edges!r}")
    return via_matrix / xx
