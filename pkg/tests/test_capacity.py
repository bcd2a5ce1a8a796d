import math

import numpy as np
import pytest

from biqo.capacity import (
    accessible_info_oracle,
    c1_closed,
    c_inf_closed,
    capacity_report,
    holevo_prior_oracle,
    quantumness_q,
)
from biqo.ensemble import helstrom_error, make_ensemble
from biqo.errors import DomainError
from biqo.linalg import binary_entropy, von_neumann_entropy
from biqo.optimize import golden_section_max

GRID = np.linspace(0.0, 1.0, 1001)
ROOT_HALF = 1 / math.sqrt(2)

# 30-digit mpmath evaluations of the closed forms
C1_06 = 0.531004406410718778746
CINF_ROOT_HALF = 0.600876036692856100842
CINF_06 = 0.721928094887362347870
Q_ROOT_HALF = 0.201752073385712201684
Q_06 = 0.190923688476643569124


def test_c1_values():
    assert c1_closed(0.0) == 1.0
    assert c1_closed(1.0) == 0.0
    assert c1_closed(0.6) == pytest.approx(C1_06, abs=1e-14)


def test_c_inf_values():
    assert c_inf_closed(0.0) == 1.0
    assert c_inf_closed(1.0) == 0.0
    assert c_inf_closed(ROOT_HALF) == pytest.approx(CINF_ROOT_HALF, abs=1e-14)
    assert c_inf_closed(0.6) == pytest.approx(CINF_06, abs=1e-14)
    e = make_ensemble(ROOT_HALF)
    assert von_neumann_entropy(0.5 * (e.rho0 + e.rho1)) == pytest.approx(CINF_ROOT_HALF, abs=1e-12)


def test_q_values():
    assert quantumness_q(ROOT_HALF) == pytest.approx(0.202, abs=5e-4)
    assert quantumness_q(ROOT_HALF) == pytest.approx(Q_ROOT_HALF, abs=1e-14)
    assert quantumness_q(0.0) == 0.0
    assert quantumness_q(1.0) == 0.0
    assert quantumness_q(0.6) == pytest.approx(Q_06, abs=1e-14)


def test_c_inf_is_binary_entropy():
    for x in GRID:
        assert c_inf_closed(x) == pytest.approx(binary_entropy((1 + x) / 2), abs=1e-12)


def test_c1_is_bsc_capacity():
    for x in GRID:
        pe = helstrom_error(make_ensemble(x))
        assert c1_closed(x) == pytest.approx(1 - binary_entropy(pe), abs=1e-12)


def test_duality():
    for x in GRID:
        assert c1_closed(x) == pytest.approx(1 - c_inf_closed(math.sqrt(1 - x * x)), abs=1e-12)


def test_ordering_and_positive_gap():
    for x in GRID:
        assert 0 <= c1_closed(x) <= c_inf_closed(x) <= 1
        assert quantumness_q(x) >= -1e-12
    for x in np.linspace(0.01, 0.99, 99):
        assert quantumness_q(x) > 0


def test_unique_interior_maximum():
    r = golden_section_max(quantumness_q, 0.01, 0.99, 1e-9)
    assert r.argmax == pytest.approx(ROOT_HALF, abs=1e-3)
    vals = np.array([quantumness_q(x) for x in GRID])
    k = int(np.argmax(vals))
    assert np.all(np.diff(vals[: k + 1]) > 0)
    assert np.all(np.diff(vals[k:]) < 0)


class TestAccessibleInfoOracle:
    def test_orthogonal(self):
        assert accessible_info_oracle(0.0) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("x", [0.1, 0.3, 0.5, 0.6, ROOT_HALF, 0.9, 0.99])
    def test_sandwich(self, x):
        found = accessible_info_oracle(x)
        assert found <= c1_closed(x) + 1e-6
        assert found >= c1_closed(x) - 1e-4

    def test_value_at_06(self):
        assert accessible_info_oracle(0.6) == pytest.approx(C1_06, abs=1e-4)

    def test_coarse_grid_still_sandwiched(self):
        found = accessible_info_oracle(0.45, angle_steps=100, prior_steps=100)
        assert c1_closed(0.45) - 1e-4 <= found <= c1_closed(0.45) + 1e-6

    def test_requires_resolution(self):
        with pytest.raises(DomainError):
            accessible_info_oracle(0.5, angle_steps=10)


class TestHolevoOracle:
    @pytest.mark.parametrize("x", [0.05, 0.3, 0.6, ROOT_HALF, 0.95])
    def test_symmetric_argmax(self, x):
        value, prior = holevo_prior_oracle(x)
        assert prior == pytest.approx(0.5, abs=1e-3)
        assert value == pytest.approx(c_inf_closed(x), abs=1e-6)

    def test_value_at_06(self):
        assert holevo_prior_oracle(0.6)[0] == pytest.approx(CINF_06, abs=1e-6)

    def test_identical_states(self):
        e = make_ensemble(1.0)
        for p in np.linspace(0, 1, 11):
            assert von_neumann_entropy(p * e.rho0 + (1 - p) * e.rho1) == pytest.approx(0.0, abs=1e-12)
        assert holevo_prior_oracle(1.0)[0] == 0.0


def test_capacity_report():
    rep = capacity_report(0.6)
    assert 0 <= rep.c1 <= rep.c_inf <= 1
    assert rep.q == pytest.approx(rep.c_inf - rep.c1, abs=1e-12)
    assert max(rep.oracle_gap) <= 1e-4
