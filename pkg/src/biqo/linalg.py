"""Small dense complex linear algebra.

Vectors and matrices are plain ``numpy`` arrays (complex128 or float64).
Everything here is sized for qubits and qubit-plus-probe systems, so the
eigensolver is a straightforward cyclic Jacobi iteration rather than a
LAPACK call.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, DomainError, NotDensityError, NotHermitianError

HERMITIAN_TOL = 1e-12
DENSITY_TRACE_TOL = 1e-12
NEGATIVE_EIGEN_TOL = 1e-10
ISOMETRY_TOL = 1e-10

_JACOBI_OFF_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 100


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def projector(v: np.ndarray) -> np.ndarray:
    """Return |v><v| for a column vector given as a 1-d array."""
    v = np.asarray(v, dtype=complex)
    return np.outer(v, np.conj(v))


def is_state_vector(v: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return abs(float(np.vdot(v, v).real) - 1.0) <= tol


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m - dagger(m)), initial=0.0) <= tol)


def is_isometry(v: np.ndarray, tol: float = ISOMETRY_TOL) -> bool:
    v = np.asarray(v)
    gram = dagger(v) @ v
    return bool(np.max(np.abs(gram - np.eye(v.shape[1]))) <= tol)


def _require_hermitian(m: np.ndarray) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    dev = float(np.max(np.abs(m - dagger(m)), initial=0.0))
    if dev > HERMITIAN_TOL:
        raise NotHermitianError(f"matrix deviates from its adjoint by {dev:.3e}")
    return m


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; row index is ``i_a * rows_b + i_b``.

    1-d inputs are treated as column vectors and give a 1-d result.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim == 1 and b.ndim == 1:
        return np.kron(a, b)
    a2 = a.reshape(-1, 1) if a.ndim == 1 else a
    b2 = b.reshape(-1, 1) if b.ndim == 1 else b
    rows_a, cols_a = a2.shape
    rows_b, cols_b = b2.shape
    out = np.einsum("ij,kl->ikjl", a2, b2)
    return out.reshape(rows_a * rows_b, cols_a * cols_b)


def partial_trace(m: np.ndarray, keep: int, dims: tuple[int, int]) -> np.ndarray:
    """Trace out one factor of an operator on ``C^d1 (x) C^d2``.

    ``keep=0`` keeps the first factor (traces out the second), ``keep=1``
    keeps the second.
    """
    m = np.asarray(m)
    d1, d2 = dims
    if d1 < 1 or d2 < 1:
        raise DimensionError(f"factor dimensions must be positive, got {dims}")
    if m.ndim != 2 or m.shape != (d1 * d2, d1 * d2):
        raise DimensionError(f"operator of shape {m.shape} does not act on {d1}x{d2}")
    if keep not in (0, 1):
        raise DimensionError(f"keep must be 0 or 1, got {keep!r}")
    t = m.reshape(d1, d2, d1, d2)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    return np.einsum("ijil->jl", t)


def _jacobi_rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)
    if r == 0.0:
        return
    phase = apq / r
    theta = 0.5 * math.atan2(2.0 * r, (a[q, q] - a[p, p]).real)
    c, s = math.cos(theta), math.sin(theta)
    # unitary on the (p, q) plane: phase fix on q, then a real Givens rotation
    j = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=complex)
    idx = [p, q]
    a[:, idx] = a[:, idx] @ j
    a[idx, :] = dagger(j) @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ j


def hermitian_eigen(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi sweeps.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvalues sorted in
    descending order and eigenvectors as the columns of a unitary matrix.
    """
    m = _require_hermitian(m)
    n = m.shape[0]
    a = 0.5 * (m + dagger(m)).astype(complex)
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = math.sqrt(float(np.sum(np.abs(a[offdiag]) ** 2)))
        if off < _JACOBI_OFF_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(a, v, p, q)
    evals = np.diag(a).real.copy()
    order = np.argsort(-evals, kind="stable")
    return evals[order], v[:, order]


def eigvalsh(m: np.ndarray) -> np.ndarray:
    return hermitian_eigen(m)[0]


def trace_norm(m: np.ndarray) -> float:
    """Sum of the absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(eigvalsh(m))))


def check_density(rho: np.ndarray) -> np.ndarray:
    """Validate a density operator and return its eigenvalues."""
    evals = eigvalsh(rho)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > DENSITY_TRACE_TOL:
        raise NotDensityError(f"trace {tr!r} differs from 1")
    if evals[-1] < -NEGATIVE_EIGEN_TOL:
        raise NotDensityError(f"negative eigenvalue {evals[-1]:.3e}")
    return evals


def _entropy_terms(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    mask = p > 0.0
    out[mask] = -p[mask] * np.log2(p[mask])
    return out


def von_neumann_entropy(rho: np.ndarray) -> float:
    """Entropy in bits, with 0 log 0 = 0."""
    evals = np.clip(check_density(rho), 0.0, None)
    return float(np.sum(_entropy_terms(evals)))


def binary_entropy(p):
    """h2(p) in bits. Accepts a scalar or an array; endpoints give exactly 0."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr < -1e-12) or np.any(arr > 1.0 + 1e-12):
        raise DomainError(f"probability outside [0, 1]: {p!r}")
    arr = np.clip(arr, 0.0, 1.0)
    h = _entropy_terms(arr) + _entropy_terms(1.0 - arr)
    if h.ndim == 0:
        return float(h)
    return h
