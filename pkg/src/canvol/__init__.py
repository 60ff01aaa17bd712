"""Exact lower bounds for canonical volumes of minimal threefolds of general type.

The package computes plurigenera of singular minimal threefolds by exact
rational arithmetic, classifies the basket configurations compatible with
prescribed plurigenera, cross-checks them against weighted complete
intersections, iterates certified bounds for canonical degrees and slopes,
and assembles the sharp global bound K^3 >= 1/30 for chi(O) <= 0.
"""

from .baskets import (
    Basket,
    BasketSet,
    Infeasible,
    LinearInvariants,
    ReidModel,
    basket_from_b,
    correction_sum,
    correction_term,
    invert_p2_p3,
    make_basket,
    parse_rational,
    pluri_table,
    plurigenus,
    rat_str,
)
from .classify import (
    CaseReport,
    ConstraintProblem,
    ExcludedCase,
    Solution,
    basket_count_bound,
    classify_small_p5,
    enumerate_solutions,
)
from .mainproof import BranchResult, MainReport, SubBound, prove_main
from .slopes import (
    DEFAULT_SCHEDULE,
    FIBER_1_2,
    FiberData,
    InsufficientSlope,
    MissingBound,
    MultiplicationRule,
    NoValidRule,
    SlopeState,
    apply_rule,
    base_bounds,
    fiber_volume_bound,
    propagate,
    surface_plurigenus,
)
from .wci import (
    CoefficientTable,
    ConsistencyReport,
    WeightedCI,
    canonical_amplitude,
    canonical_volume,
    hilbert_coeffs,
    plurigenera_from_hilbert,
    reid_consistency,
)
from .xi import (
    PRESETS,
    Preset,
    PresetRun,
    XiProblem,
    XiStep,
    XiTrace,
    run_preset,
    volume_bound,
    xi_iterate,
    xi_limit,
    xi_step,
    xi_verify_unit_limit,
)

__version__ = "0.1.0"
