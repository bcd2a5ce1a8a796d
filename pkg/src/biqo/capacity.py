"""Single-signal and collective capacities of the two-state alphabet.

``c1_closed`` is the accessible information (signal-by-signal decoding),
``c_inf_closed`` the Holevo quantity (collective decoding); their difference
is the quantumness gap. Each closed form has a brute-force oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ensemble import check_overlap, make_ensemble
from .errors import DomainError
from .linalg import binary_entropy, von_neumann_entropy
from .optimize import golden_section_max

_REFINE_ROUNDS = 8
_REFINE_TOL = 1e-10


def _xlog2x(t: float) -> float:
    return 0.0 if t <= 0.0 else t * math.log2(t)


def c1_closed(x: float) -> float:
    x = check_overlap(x)
    s = math.sqrt(1.0 - x * x)
    return 0.5 * _xlog2x(1.0 + s) + 0.5 * _xlog2x(1.0 - s)


def c_inf_closed(x: float) -> float:
    x = check_overlap(x)
    return 1.0 - 0.5 * (_xlog2x(1.0 - x) + _xlog2x(1.0 + x))


def quantumness_q(x: float) -> float:
    return c_inf_closed(x) - c1_closed(x)


def _mutual_information(x: float, phi, p):
    """I(prior; outcome) for the projective measurement at angle ``phi``.

    Broadcasts over array arguments.
    """
    s = math.sqrt(max(0.0, 1.0 - x * x))
    q0 = np.cos(phi) ** 2
    q1 = np.clip((x * np.cos(phi) + s * np.sin(phi)) ** 2, 0.0, 1.0)
    out = p * q0 + (1.0 - p) * q1
    return binary_entropy(out) - p * binary_entropy(q0) - (1.0 - p) * binary_entropy(q1)


def accessible_info_oracle(x: float, angle_steps: int = 400, prior_steps: int = 400) -> float:
    """Maximize the mutual information over measurement angle and prior.

    A full grid over ``[0, pi) x [0, 1]`` is followed by alternating
    golden-section refinement of each coordinate inside one grid cell of
    the incumbent.
    """
    x = check_overlap(x)
    if angle_steps < 100 or prior_steps < 100:
        raise DomainError("oracle needs at least 100 steps per coordinate")
    phis = np.linspace(0.0, math.pi, angle_steps, endpoint=False)
    ps = np.linspace(0.0, 1.0, prior_steps + 1)
    grid = _mutual_information(x, phis[:, None], ps[None, :])
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    phi, p = float(phis[i]), float(ps[j])
    best = float(grid[i, j])
    dphi = math.pi / angle_steps
    dp = 1.0 / prior_steps
    for _ in range(_REFINE_ROUNDS):
        r = golden_section_max(
            lambda t: float(_mutual_information(x, t, p)), phi - dphi, phi + dphi, _REFINE_TOL
        )
        if r.value > best:
            best, phi = r.value, r.argmax
        r = golden_section_max(
            lambda t: float(_mutual_information(x, phi, t)),
            max(0.0, p - dp),
            min(1.0, p + dp),
            _REFINE_TOL,
        )
        if r.value > best:
            best, p = r.value, r.argmax
    return best


def holevo_prior_oracle(x: float, prior_steps: int = 1000) -> tuple[float, float]:
    """Maximize S(p rho0 + (1-p) rho1) over the prior ``p``.

    Returns ``(max entropy in bits, maximizing p)``.
    """
    e = make_ensemble(x)
    if prior_steps < 100:
        raise DomainError("oracle needs at least 100 prior steps")

    def entropy(p: float) -> float:
        return von_neumann_entropy(p * e.rho0 + (1.0 - p) * e.rho1)

    ps = np.linspace(0.0, 1.0, prior_steps + 1)
    vals = np.array([entropy(p) for p in ps])
    k = int(np.argmax(vals))
    best, arg = float(vals[k]), float(ps[k])
    if best == 0.0:
        # every prior gives a pure mixture (x = 1); report the symmetric point
        return 0.0, 0.5
    dp = 1.0 / prior_steps
    r = golden_section_max(entropy, max(0.0, arg - dp), min(1.0, arg + dp), _REFINE_TOL)
    if r.value >= best:
        best, arg = r.value, r.argmax
    return best, arg


@dataclass(frozen=True)
class CapacityReport:
    x: float
    c1: float
    c_inf: float
    q: float
    oracle_c1: float
    oracle_c_inf: float
    oracle_gap: tuple[float, float]


def capacity_report(x: float, angle_steps: int = 400, prior_steps: int = 400) -> CapacityReport:
    c1 = c1_closed(x)
    ci = c_inf_closed(x)
    oc1 = accessible_info_oracle(x, angle_steps, prior_steps)
    oci, _ = holevo_prior_oracle(x, max(prior_steps, 100))
    return CapacityReport(
        x=float(x),
        c1=c1,
        c_inf=ci,
        q=ci - c1,
        oracle_c1=oc1,
        oracle_c_inf=oci,
        oracle_gap=(abs(oc1 - c1), abs(oci - ci)),
    )
