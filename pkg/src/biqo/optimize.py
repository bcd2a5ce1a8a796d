"""Derivative-free optimization: golden-section search and Nelder-Mead."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, NonFiniteError, RankDeficiencyError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

RANK_TOL = 1e-12


@dataclass(frozen=True)
class ScalarSearchResult:
    argmax: float
    value: float
    iterations: int
    bracket: tuple[float, float]


def golden_iteration_bound(lo: float, hi: float, tol: float) -> int:
    return math.ceil(math.log((hi - lo) / tol) / math.log(1.0 / INV_PHI)) + 2


def golden_section_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float = 1e-8
) -> ScalarSearchResult:
    """Maximize a unimodal ``f`` on ``[lo, hi]``.

    The bracket shrinks by 1/phi per iteration until its width is at most
    ``tol``; the midpoint of the final bracket is returned.
    """
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    if tol <= 0:
        raise DomainError("tol must be positive")

    def fv(t: float) -> float:
        v = float(f(t))
        if not math.isfinite(v):
            raise NonFiniteError(f"objective returned {v!r} at {t!r}")
        return v

    a, b = float(lo), float(hi)
    h = b - a
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    fc, fd = fv(c), fv(d)
    iterations = 0
    while b - a > tol:
        iterations += 1
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + INV_PHI2 * h
            fc = fv(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + INV_PHI * h
            fd = fv(d)
    best = 0.5 * (a + b)
    return ScalarSearchResult(argmax=best, value=fv(best), iterations=iterations, bracket=(a, b))


@dataclass(frozen=True)
class SimplexConfig:
    """Settings for :func:`simplex_minimize`.

    ``restarts`` counts extra Nelder-Mead runs launched from the incumbent
    with a freshly oriented simplex drawn from ``seed``.
    """

    dimension: int
    max_iterations: int = 20_000
    tolerance: float = 1e-12
    restarts: int = 2
    seed: int = 0
    initial_step: float = 0.5

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError("dimension must be >= 1")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")


class SimplexResult(NamedTuple):
    x: np.ndarray
    value: float
    converged: bool


def _safe(f: Callable[[np.ndarray], float], v: np.ndarray) -> float:
    y = float(f(v))
    return y if y == y else math.inf


def _nelder_mead(f, simplex: np.ndarray, tol: float, max_iter: int):
    n = simplex.shape[1]
    vals = np.array([_safe(f, s) for s in simplex])
    for _ in range(max_iter):
        order = np.argsort(vals, kind="stable")
        simplex = simplex[order]
        vals = vals[order]
        if vals[-1] - vals[0] < tol:
            return simplex[0], vals[0], True
        centroid = simplex[:-1].sum(axis=0) / n
        worst = simplex[-1]
        xr = centroid + (centroid - worst)
        fr = _safe(f, xr)
        if fr < vals[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = _safe(f, xe)
            if fe < fr:
                simplex[-1], vals[-1] = xe, fe
            else:
                simplex[-1], vals[-1] = xr, fr
            continue
        if fr < vals[-2]:
            simplex[-1], vals[-1] = xr, fr
            continue
        if fr < vals[-1]:
            xc = centroid + 0.5 * (xr - centroid)
            fc = _safe(f, xc)
            accept = fc <= fr
        else:
            xc = centroid + 0.5 * (worst - centroid)
            fc = _safe(f, xc)
            accept = fc < vals[-1]
        if accept:
            simplex[-1], vals[-1] = xc, fc
            continue
        simplex[1:] = simplex[0] + 0.5 * (simplex[1:] - simplex[0])
        vals[1:] = [_safe(f, s) for s in simplex[1:]]
    order = np.argsort(vals, kind="stable")
    return simplex[order[0]], vals[order[0]], False


def simplex_minimize(
    f: Callable[[np.ndarray], float], cfg: SimplexConfig, start
) -> SimplexResult:
    """Nelder-Mead with coefficients (1, 2, 1/2, 1/2).

    Converged means the spread of simplex values fell below
    ``cfg.tolerance`` in the final run. Never returns a point worse than
    ``start``.
    """
    x0 = np.array(start, dtype=float)
    if x0.shape != (cfg.dimension,):
        raise DomainError(f"start has shape {x0.shape}, expected ({cfg.dimension},)")
    rng = np.random.default_rng(cfg.seed)
    n = cfg.dimension
    best_x, best_f = x0.copy(), _safe(f, x0)
    converged = False
    basis = np.eye(n)
    for run in range(cfg.restarts + 1):
        if run > 0:
            basis, _ = np.linalg.qr(rng.normal(size=(n, n)))
        simplex = np.vstack([best_x, best_x + cfg.initial_step * basis.T])
        x, fx, converged = _nelder_mead(f, simplex, cfg.tolerance, cfg.max_iterations)
        if fx <= best_f:
            best_x, best_f = x.copy(), fx
    return SimplexResult(best_x, float(best_f), converged)


def orthonormal_columns_from_params(params, rows: int, cols: int) -> np.ndarray:
    """Map ``2*rows*cols`` reals to a ``rows x cols`` isometry.

    Column ``k`` takes its real parts from ``params[2*rows*k : 2*rows*k + rows]``
    and its imaginary parts from the next ``rows`` entries. Columns are then
    orthonormalized in order by modified Gram-Schmidt.
    """
    p = np.asarray(params, dtype=float)
    if p.shape != (2 * rows * cols,):
        raise DomainError(f"expected {2 * rows * cols} parameters, got {p.shape}")
    if cols > rows:
        raise RankDeficiencyError(f"cannot fit {cols} orthonormal columns in dimension {rows}")
    raw = p.reshape(cols, 2, rows)
    out = np.empty((rows, cols), dtype=complex)
    for k in range(cols):
        v = raw[k, 0] + 1j * raw[k, 1]
        scale = max(1.0, float(np.linalg.norm(v)))
        for j in range(k):
            v = v - np.vdot(out[:, j], v) * out[:, j]
        norm = float(np.linalg.norm(v))
        if norm < RANK_TOL * scale:
            raise RankDeficiencyError(f"column {k} is linearly dependent (pivot {norm:.3e})")
        out[:, k] = v / norm
    return out
