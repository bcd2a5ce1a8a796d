"""The two-state ensemble and its minimum-error discrimination."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, IndistinguishableError
from .linalg import hermitian_eigen, projector, trace_norm

PRIORS = (0.5, 0.5)

_AGREEMENT_TOL = 1e-10


def check_overlap(x: float) -> float:
    x = float(x)
    if not (0.0 <= x <= 1.0) or math.isnan(x):
        raise DomainError(f"overlap must lie in [0, 1], got {x!r}")
    return x


@dataclass(frozen=True)
class TwoStateEnsemble:
    """Two equiprobable pure qubit states with real overlap ``x``.

    The states are embedded as psi0 = (1, 0) and psi1 = (x, sqrt(1 - x^2)).
    """

    x: float
    theta: float = field(init=False)
    psi0: np.ndarray = field(init=False, repr=False)
    psi1: np.ndarray = field(init=False, repr=False)
    rho0: np.ndarray = field(init=False, repr=False)
    rho1: np.ndarray = field(init=False, repr=False)
    priors: tuple[float, float] = field(init=False, default=PRIORS)

    def __post_init__(self):
        x = check_overlap(self.x)
        psi0 = np.array([1.0, 0.0], dtype=complex)
        psi1 = np.array([x, math.sqrt(1.0 - x * x)], dtype=complex)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "theta", math.acos(x))
        object.__setattr__(self, "psi0", psi0)
        object.__setattr__(self, "psi1", psi1)
        object.__setattr__(self, "rho0", projector(psi0))
        object.__setattr__(self, "rho1", projector(psi1))

    @property
    def states(self) -> tuple[np.ndarray, np.ndarray]:
        return self.psi0, self.psi1

    @property
    def densities(self) -> tuple[np.ndarray, np.ndarray]:
        return self.rho0, self.rho1


def make_ensemble(x: float) -> TwoStateEnsemble:
    return TwoStateEnsemble(x)


def helstrom_error_states(rho0: np.ndarray, rho1: np.ndarray) -> float:
    """Minimum error for discriminating two equiprobable density operators."""
    return 0.5 - 0.25 * trace_norm(rho1 - rho0)


def helstrom_error(e: TwoStateEnsemble) -> float:
    """Minimum error probability for the ensemble.

    The closed form is checked against the trace-norm expression on every
    call; a disagreement beyond 1e-10 raises ``RuntimeError``.
    """
    closed = 0.5 * (1.0 - math.sqrt(1.0 - e.x * e.x))
    via_norm = helstrom_error_states(e.rho0, e.rho1)
    if abs(closed - via_norm) > _AGREEMENT_TOL:
        raise RuntimeError(
            f"Helstrom error mismatch at x={e.x}: closed form {closed!r}, trace norm {via_norm!r}"
        )
    return closed


def helstrom_measurement(e: TwoStateEnsemble) -> np.ndarray:
    """Optimal projective basis; column k is the outcome that guesses state k.

    The basis diagonalizes rho1 - rho0: outcome 1 is the positive eigenvector.
    """
    if e.x >= 1.0:
        raise IndistinguishableError("identical states admit no discriminating measurement")
    _, vecs = hermitian_eigen(e.rho1 - e.rho0)
    # eigenvalues come back descending: +sqrt(1-x^2) first, then the negative one
    return np.column_stack([vecs[:, 1], vecs[:, 0]])


def decision_error(e: TwoStateEnsemble, basis: np.ndarray) -> float:
    """Average error of the rule "outcome k means state k", by enumeration."""
    err = 0.0
    for i, psi in enumerate(e.states):
        for k in range(2):
            if k != i:
                err += PRIORS[i] * abs(np.vdot(basis[:, k], psi)) ** 2
    return float(err)


def angle_basis(phi: float) -> np.ndarray:
    """Real orthonormal basis rotated by ``phi`` from the computational one."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]], dtype=complex)
