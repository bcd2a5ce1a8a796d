"""Quantumness measures for a pair of nonorthogonal pure qubit states.

Closed forms for discrimination error, capacities, the information vs.
disturbance tradeoff, and optimal cloning fidelities, each paired with a
numerical oracle that recovers it by brute-force search.
"""

from .capacity import (
    CapacityReport,
    accessible_info_oracle,
    c1_closed,
    c_inf_closed,
    capacity_report,
    holevo_prior_oracle,
    quantumness_q,
)
from .cloning import (
    CloneCandidate,
    cloning_oracle,
    global_fidelity_closed,
    local_fidelity_closed,
)
from .ensemble import (
    TwoStateEnsemble,
    helstrom_error,
    helstrom_measurement,
    make_ensemble,
)
from .report import MeasureReport, curve, measure_report, most_quantum
from .tradeoff import (
    B92Stats,
    EavesdropConfig,
    EavesdropResult,
    d_at_max_info,
    disturbance_curve,
    probe_oracle,
    simulate_b92,
)

__version__ = "0.1.0"
