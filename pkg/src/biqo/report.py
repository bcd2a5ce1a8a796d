"""Aggregate views over the closed-form measures: reports, curves, maxima."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .capacity import c1_closed, c_inf_closed, quantumness_q
from .cloning import global_fidelity_closed, local_fidelity_closed
from .ensemble import check_overlap, helstrom_error, make_ensemble
from .errors import DomainError
from .optimize import ScalarSearchResult, golden_section_max
from .tradeoff import d_at_max_info, disturbance_curve


@dataclass(frozen=True)
class MeasureReport:
    x: float
    p_e: float
    c1: float
    c_inf: float
    q: float
    d_at_mi: float
    f_g: float
    f_l: float

    def as_dict(self) -> dict:
        return asdict(self)


def measure_report(x: float) -> MeasureReport:
    x = check_overlap(x)
    return MeasureReport(
        x=x,
        p_e=helstrom_error(make_ensemble(x)),
        c1=c1_closed(x),
        c_inf=c_inf_closed(x),
        q=quantumness_q(x),
        d_at_mi=d_at_max_info(x),
        f_g=global_fidelity_closed(x),
        f_l=local_fidelity_closed(x),
    )


def _pe(x: float) -> float:
    return helstrom_error(make_ensemble(x))


CURVE_MEASURES = {
    "pe": _pe,
    "c1": c1_closed,
    "cinf": c_inf_closed,
    "q": quantumness_q,
    "dmi": d_at_max_info,
    "fg": global_fidelity_closed,
    "fl": local_fidelity_closed,
}


def curve(measure: str, steps: int, overlap: float | None = None) -> tuple[tuple[str, str], list]:
    """Sample a measure on ``steps + 1`` evenly spaced points.

    Returns ``(header, rows)``. For ``"tradeoff"`` the sweep runs over Eve's
    error from the Helstrom limit at ``overlap`` up to 1/2.
    """
    if steps < 2:
        raise DomainError("steps must be >= 2")
    if measure == "tradeoff":
        if overlap is None:
            raise DomainError("the tradeoff curve needs an overlap")
        x = check_overlap(overlap)
        pe = _pe(x)
        if not pe < 0.5:
            raise DomainError("identical states leave no tradeoff to sweep")
        ps = np.linspace(pe, 0.5, steps + 1)
        return ("p", "d"), [(float(p), disturbance_curve(x, p)) for p in ps]
    if measure not in CURVE_MEASURES:
        raise DomainError(f"unknown measure {measure!r}")
    f = CURVE_MEASURES[measure]
    xs = np.linspace(0.0, 1.0, steps + 1)
    return ("x", measure), [(float(x), f(float(x))) for x in xs]


MAXIMIZE_TARGETS = {
    "q": (quantumness_q, 1.0 / math.sqrt(2.0)),
    "dmi": (d_at_max_info, 1.0 / math.sqrt(2.0)),
    "fg-deficit": (lambda x: 1.0 - global_fidelity_closed(x), 1.0 / math.sqrt(3.0)),
    "fl-deficit": (lambda x: 1.0 - local_fidelity_closed(x), 0.5),
}


@dataclass(frozen=True)
class MostQuantum:
    measure: str
    search: ScalarSearchResult
    reference_argmax: float

    @property
    def deviation(self) -> float:
        return abs(self.search.argmax - self.reference_argmax)


def most_quantum(measure: str, tol: float = 1e-8) -> MostQuantum:
    """Golden-section search for the overlap that maximizes ``measure`` on [0, 1]."""
    if measure not in MAXIMIZE_TARGETS:
        raise DomainError(f"unknown measure {measure!r}")
    f, ref = MAXIMIZE_TARGETS[measure]
    return MostQuantum(measure, golden_section_max(f, 0.0, 1.0, tol), ref)
