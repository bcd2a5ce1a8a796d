"""State-dependent cloning of the two states under an equal-marginals constraint."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ensemble import PRIORS, check_overlap, make_ensemble
from .errors import DomainError
from .linalg import partial_trace, projector, tensor_product
from .optimize import SimplexConfig, simplex_minimize

FEASIBILITY_TOL = 1e-6
OBJECTIVES = ("global", "local")


def global_fidelity_closed(x: float) -> float:
    x = check_overlap(x)
    return 0.5 * (1.0 + x**3 + (1.0 - x * x) * math.sqrt(1.0 + x * x))


def local_fidelity_closed(x: float) -> float:
    x = check_overlap(x)
    if x == 0.0:
        # the 1/x prefactor has a removable singularity; the limit is 1
        return 1.0
    r = math.sqrt(1.0 - 2.0 * x + 9.0 * x * x)
    if x < 0.25:
        # rationalized form of the radicand; the direct sum cancels to ~8x^2
        inner = 16.0 * x * x * (1.0 - 2.0 * x) / ((1.0 - x) * r + 1.0 - 2.0 * x - 3.0 * x * x)
    else:
        inner = -1.0 + 2.0 * x + 3.0 * x * x + (1.0 - x) * r
    if inner < -1e-12:
        raise ArithmeticError(f"negative radicand {inner!r} at x={x!r}")
    inner = max(inner, 0.0)
    return 0.5 + math.sqrt(2.0) / (32.0 * x) * (1.0 + x) * (3.0 - 3.0 * x + r) * math.sqrt(inner)


@dataclass(frozen=True)
class CloneCandidate:
    x: float
    joint0: np.ndarray = field(repr=False)
    joint1: np.ndarray = field(repr=False)
    marginal_residual: float
    overlap_residual: float
    f_global: float
    f_local: float

    @property
    def feasible(self) -> bool:
        return (
            self.marginal_residual <= FEASIBILITY_TOL and self.overlap_residual <= FEASIBILITY_TOL
        )


def clone_candidate(x: float, joint0, joint1) -> CloneCandidate:
    """Score a pair of system+ancilla states as clones of the ensemble at ``x``."""
    e = make_ensemble(x)
    joints = [np.asarray(joint0, dtype=complex), np.asarray(joint1, dtype=complex)]
    f_global = f_local = 0.0
    marginal = 0.0
    for prior, psi, j in zip(PRIORS, e.states, joints):
        rho = projector(j)
        rho_s = partial_trace(rho, keep=0, dims=(2, 2))
        rho_a = partial_trace(rho, keep=1, dims=(2, 2))
        marginal = max(marginal, float(np.max(np.abs(rho_s - rho_a))))
        f_global += prior * abs(np.vdot(j, tensor_product(psi, psi))) ** 2
        f_local += prior * float(np.vdot(psi, rho_s @ psi).real)
    return CloneCandidate(
        x=e.x,
        joint0=joints[0],
        joint1=joints[1],
        marginal_residual=marginal,
        overlap_residual=abs(np.vdot(joints[0], joints[1]) - e.x),
        f_global=float(f_global),
        f_local=float(f_local),
    )


def _clone_terms(v: np.ndarray, psi0: np.ndarray, psi1: np.ndarray, x: float):
    """(global, local, squared constraint violation) for real amplitudes ``v``."""
    j0 = v[:4] / math.sqrt(v[:4] @ v[:4])
    j1 = v[4:] / math.sqrt(v[4:] @ v[4:])
    g = loc = 0.0
    violation = (j0 @ j1 - x) ** 2
    for j, psi in ((j0, psi0), (j1, psi1)):
        m = j.reshape(2, 2)
        rs = m @ m.T
        violation += float(np.sum((rs - m.T @ m) ** 2))
        g += (psi @ m @ psi) ** 2
        loc += psi @ rs @ psi
    return 0.5 * g, 0.5 * loc, violation


def cloning_oracle(
    x: float,
    objective: str = "global",
    restarts: int = 12,
    seed: int = 0,
    penalty_weight: float = 0.1,
    penalty_stages: int = 8,
) -> CloneCandidate:
    """Maximize an average clone fidelity over pairs of real 4-dim states.

    The pair must keep the input overlap (so some unitary on system plus
    ancilla produces it) and each output must have identical system and
    ancilla marginals. Both constraints enter as a quadratic penalty
    escalated tenfold per stage. The weak opening weight lets the fidelity
    steer restarts between the branches of the feasible set before the
    constraints harden. Returns the best feasible candidate; if no restart
    is feasible, the best one found, with ``feasible`` False.
    """
    x = check_overlap(x)
    if objective not in OBJECTIVES:
        raise DomainError(f"objective must be one of {OBJECTIVES}, got {objective!r}")
    if restarts < 1:
        raise DomainError("need at least one restart")
    which = OBJECTIVES.index(objective)
    psi0 = np.array([1.0, 0.0])
    psi1 = np.array([x, math.sqrt(1.0 - x * x)])

    candidates = []
    for r in range(restarts):
        start_seed, nm_seed = np.random.SeedSequence([seed, r]).generate_state(2)
        v = np.random.default_rng(start_seed).normal(size=8)
        weight = penalty_weight
        for stage in range(penalty_stages):

            def f(u, w=weight):
                if u[:4] @ u[:4] < 1e-24 or u[4:] @ u[4:] < 1e-24:
                    return math.inf
                terms = _clone_terms(u, psi0, psi1, x)
                return -terms[which] + w * terms[2]

            cfg = SimplexConfig(
                dimension=8,
                max_iterations=10_000,
                tolerance=1e-14,
                restarts=2,
                seed=int(nm_seed) + stage,
                initial_step=0.5 if stage == 0 else 0.05,
            )
            v = simplex_minimize(f, cfg, v).x
            weight *= 10.0
        j0 = v[:4] / np.linalg.norm(v[:4])
        j1 = v[4:] / np.linalg.norm(v[4:])
        cand = clone_candidate(x, j0, j1)
        score = cand.f_global if which == 0 else cand.f_local
        candidates.append((r, score, cand))
    feasible = [c for c in candidates if c[2].feasible] or candidates
    return max(feasible, key=lambda c: (c[1], -c[0]))[2]
