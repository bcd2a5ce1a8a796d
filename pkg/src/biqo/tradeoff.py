"""Information gain versus disturbance for an eavesdropper on the two states.

Eve attaches a probe and applies a joint unitary; equivalently an isometry
``V: C^2 -> C^2 (x) C^probe_dim`` (signal factor first). Her error ``P`` is
the Helstrom error on the probe states; the disturbance ``D`` is the chance
that Bob's projective test onto the sent state fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .ensemble import (
    PRIORS,
    check_overlap,
    helstrom_error,
    helstrom_error_states,
    make_ensemble,
)
from .errors import DomainError, InformationBoundError
from .linalg import hermitian_eigen, partial_trace, projector
from .optimize import SimplexConfig, orthonormal_columns_from_params, simplex_minimize

P_TOL = 1e-9
# |4P(1-P) - x^2| below this is rounding noise at the maximal-information endpoint
_ENDPOINT_SNAP = 1e-14
_FEASIBILITY_TOL = 1e-5


def disturbance_curve(x: float, p: float) -> float:
    """Minimum disturbance compatible with Eve's error probability ``p``."""
    x = check_overlap(x)
    p = float(p)
    pe = helstrom_error(make_ensemble(x))
    if p < pe - P_TOL:
        raise InformationBoundError(f"P={p!r} is below the Helstrom error {pe!r} at x={x!r}")
    if p > 0.5 + P_TOL:
        raise DomainError(f"P={p!r} exceeds 1/2")
    p = min(max(p, pe), 0.5)
    slack = 4.0 * p * (1.0 - p) - x * x
    if abs(slack) <= _ENDPOINT_SNAP:
        slack = 0.0
    radicand = max(0.0, (1.0 - x * x) * slack)
    inner = 1.0 + x * x * (-1.0 - 4.0 * p + 4.0 * p * p + 2.0 * x * x + 2.0 * math.sqrt(radicand))
    d = 0.5 - 0.5 * math.sqrt(max(0.0, inner))
    return min(max(d, 0.0), 0.5)


def d_at_max_info(x: float) -> float:
    x = check_overlap(x)
    return 0.5 * (1.0 - math.sqrt(1.0 - x * x + x**4))


@dataclass(frozen=True)
class EavesdropConfig:
    x: float
    p_eve: float
    probe_dim: int = 4
    restarts: int = 20
    penalty_weight: float = 1e6
    penalty_stages: int = 3
    seed: int = 0
    tolerance: float = 1e-12
    max_iterations: int = 20_000

    def __post_init__(self):
        x = check_overlap(self.x)
        pe = helstrom_error(make_ensemble(x))
        if self.p_eve < pe - P_TOL:
            raise InformationBoundError(f"p_eve={self.p_eve!r} below Helstrom error {pe!r}")
        if self.p_eve > 0.5 + P_TOL:
            raise DomainError(f"p_eve={self.p_eve!r} exceeds 1/2")
        if self.probe_dim < 1:
            raise DomainError("probe_dim must be >= 1")
        if self.restarts < 1:
            raise DomainError("need at least one restart")
        if not self.penalty_weight > 0:
            raise DomainError("penalty_weight must be positive")


@dataclass(frozen=True)
class EavesdropResult:
    x: float
    p_eve: float
    d: float
    p_achieved: float
    isometry: np.ndarray = field(repr=False)
    rho_e: tuple[np.ndarray, np.ndarray] = field(repr=False)
    rho_a: tuple[np.ndarray, np.ndarray] = field(repr=False)
    converged: bool
    restart_d: tuple[float, ...] = ()

    @property
    def probe_dim(self) -> int:
        return self.isometry.shape[0] // 2


@numba.njit(cache=True)
def _probe_terms(params, x, s, probe_dim):
    """(D, P, ok) for the isometry encoded by ``params``; hot loop of the oracle."""
    rows = 2 * probe_dim
    a = params[0:rows] + 1j * params[rows : 2 * rows]
    b = params[2 * rows : 3 * rows] + 1j * params[3 * rows : 4 * rows]
    na = math.sqrt(np.sum(a.real**2 + a.imag**2))
    if na < 1e-12:
        return 1.0, 0.5, False
    a = a / na
    nb_raw = math.sqrt(np.sum(b.real**2 + b.imag**2))
    b = b - np.vdot(a, b) * a
    nb = math.sqrt(np.sum(b.real**2 + b.imag**2))
    if nb < 1e-12 * max(1.0, nb_raw):
        return 1.0, 0.5, False
    b = b / nb
    out1 = x * a + s * b
    m0 = a.reshape(2, probe_dim)
    m1 = out1.reshape(2, probe_dim)
    bob1 = x * m1[0] + s * m1[1]
    fid = np.sum(m0[0].real ** 2 + m0[0].imag ** 2) + np.sum(bob1.real**2 + bob1.imag**2)
    diff = m1.T @ np.conj(m1) - m0.T @ np.conj(m0)
    pe = 0.5 - 0.25 * np.sum(np.abs(np.linalg.eigvalsh(diff)))
    return 1.0 - 0.5 * fid, pe, True


def probe_states(isometry: np.ndarray, x: float):
    """Outputs of the attack: ``(rho_e pair, rho_a pair)``."""
    e = make_ensemble(x)
    pd = isometry.shape[0] // 2
    rho_e, rho_a = [], []
    for psi in e.states:
        joint = projector(isometry @ psi)
        rho_a.append(partial_trace(joint, keep=0, dims=(2, pd)))
        rho_e.append(partial_trace(joint, keep=1, dims=(2, pd)))
    return tuple(rho_e), tuple(rho_a)


def evaluate_isometry(isometry: np.ndarray, x: float) -> tuple[float, float]:
    """Disturbance and Eve's Helstrom error for a given attack."""
    e = make_ensemble(x)
    rho_e, rho_a = probe_states(isometry, x)
    fid = sum(
        PRIORS[i] * float(np.vdot(psi, rho_a[i] @ psi).real) for i, psi in enumerate(e.states)
    )
    return 1.0 - fid, helstrom_error_states(*rho_e)


def _optimize_restart(cfg: EavesdropConfig, index: int):
    pd = cfg.probe_dim
    n = 8 * pd
    x = cfg.x
    s = math.sqrt(1.0 - x * x)
    ss = np.random.SeedSequence([cfg.seed, index])
    start_seed, nm_seed = ss.generate_state(2)
    params = np.random.default_rng(start_seed).normal(size=n)
    converged = False
    weight = cfg.penalty_weight
    for stage in range(cfg.penalty_stages):

        def objective(v, w=weight):
            d, p, ok = _probe_terms(v, x, s, pd)
            if not ok:
                return math.inf
            excess = p - cfg.p_eve
            return d + w * excess * excess if excess > 0.0 else d

        simplex = SimplexConfig(
            dimension=n,
            max_iterations=cfg.max_iterations,
            tolerance=cfg.tolerance,
            restarts=2,
            seed=int(nm_seed) + stage,
            initial_step=0.3 if stage == 0 else 0.05,
        )
        params, _, converged = simplex_minimize(objective, simplex, params)
        weight *= 10.0
    return params, converged


def probe_oracle(cfg: EavesdropConfig) -> EavesdropResult:
    """Numerically minimize the disturbance at Eve's error budget ``p_eve``.

    Each restart draws a random start, then runs penalty stages with the
    weight escalating tenfold. The result is the lowest-disturbance restart
    among those that converged and meet the budget to 1e-5; ties go to the
    lowest restart index. If none qualifies, the lowest-disturbance restart
    is returned with ``converged=False``.
    """
    pd = cfg.probe_dim
    candidates = []
    for r in range(cfg.restarts):
        params, nm_ok = _optimize_restart(cfg, r)
        try:
            iso = orthonormal_columns_from_params(params, 2 * pd, 2)
        except ValueError:
            continue
        d, p = evaluate_isometry(iso, cfg.x)
        ok = nm_ok and p - cfg.p_eve <= _FEASIBILITY_TOL
        candidates.append((r, iso, d, p, ok))
    if not candidates:
        raise RuntimeError("every restart ended on a rank-deficient parameterization")
    feasible = [c for c in candidates if c[4]] or candidates
    r, iso, d, p, ok = min(feasible, key=lambda c: (c[2], c[0]))
    rho_e, rho_a = probe_states(iso, cfg.x)
    return EavesdropResult(
        x=cfg.x,
        p_eve=cfg.p_eve,
        d=d,
        p_achieved=p,
        isometry=iso,
        rho_e=rho_e,
        rho_a=rho_a,
        converged=ok,
        restart_d=tuple(c[2] for c in candidates),
    )


@dataclass(frozen=True)
class B92Stats:
    x: float
    rounds: int
    seed: int
    eve_present: bool
    bob_failures: int
    disturbance_rate: float
    disturbance_expected: float
    disturbance_stderr: float
    eve_errors: int | None = None
    eve_error_rate: float | None = None
    eve_error_expected: float | None = None
    eve_error_stderr: float | None = None


def _joint_outcome_probs(eve: EavesdropResult, x: float) -> np.ndarray:
    """Per preparation, P(bob pass/fail, eve guess) as a (2, 4) table.

    Columns: (pass, guess 0), (pass, guess 1), (fail, guess 0), (fail, guess 1).
    """
    e = make_ensemble(x)
    pd = eve.probe_dim
    evals, evecs = hermitian_eigen(eve.rho_e[1] - eve.rho_e[0])
    pos = evecs[:, evals > 0.0]
    guess1 = pos @ pos.conj().T
    guess = (np.eye(pd) - guess1, guess1)
    table = np.empty((2, 4))
    for i, psi in enumerate(e.states):
        perp = np.array([-np.conj(psi[1]), np.conj(psi[0])])
        m = (eve.isometry @ psi).reshape(2, pd)
        for j, bob in enumerate((psi, perp)):
            amp = np.conj(bob) @ m
            for g in range(2):
                table[i, 2 * j + g] = float(np.vdot(amp, guess[g] @ amp).real)
    table = np.clip(table, 0.0, None)
    return table / table.sum(axis=1, keepdims=True)


def simulate_b92(
    x: float, rounds: int, eve: EavesdropResult | None = None, seed: int = 0
) -> B92Stats:
    """Monte Carlo of Alice's sends, optional interception, and Bob's test.

    Bob tests each received system with the projector onto the state Alice
    sent; a failure flags disturbance. Eve guesses the bit with the Helstrom
    measurement on her probe.
    """
    x = check_overlap(x)
    if rounds < 1:
        raise DomainError("rounds must be >= 1")
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=rounds)
    if eve is None:
        return B92Stats(
            x=x,
            rounds=rounds,
            seed=seed,
            eve_present=False,
            bob_failures=0,
            disturbance_rate=0.0,
            disturbance_expected=0.0,
            disturbance_stderr=0.0,
        )
    table = _joint_outcome_probs(eve, x)
    u = rng.random(rounds)
    cum = np.cumsum(table, axis=1)
    outcome = np.minimum((u[:, None] >= cum[bits]).sum(axis=1), 3)
    failed = outcome >= 2
    wrong = (outcome % 2) != bits
    d_exp = float(0.5 * (table[0, 2:].sum() + table[1, 2:].sum()))
    p_exp = float(0.5 * (table[0, 1] + table[0, 3] + table[1, 0] + table[1, 2]))
    n_fail = int(failed.sum())
    n_wrong = int(wrong.sum())
    return B92Stats(
        x=x,
        rounds=rounds,
        seed=seed,
        eve_present=True,
        bob_failures=n_fail,
        disturbance_rate=n_fail / rounds,
        disturbance_expected=d_exp,
        disturbance_stderr=math.sqrt(d_exp * (1.0 - d_exp) / rounds),
        eve_errors=n_wrong,
        eve_error_rate=n_wrong / rounds,
        eve_error_expected=p_exp,
        eve_error_stderr=math.sqrt(p_exp * (1.0 - p_exp) / rounds),
    )
