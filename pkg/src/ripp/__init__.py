"""Growth-rate-optimal choice between an earlier and a later payment."""

from ._backend import BACKEND
from .core import (
    Additive,
    Case,
    Decision,
    DiscountCase,
    DiscountFactor,
    GrowthRate,
    Multiplicative,
    Option,
    Preference,
    Problem,
    ReversalCase,
    Specification,
    Threshold,
    ThresholdKind,
    TimeFrame,
    Units,
    critical_decision_time,
    discount_closed,
    growth_rate,
    prefer,
    prefer_many,
    reversal_horizon_closed,
    wealth_effect_condition,
)
from .errors import *  # noqa: F401,F403
from .solvers import (
    RootConfig,
    indifference_ratio_numeric,
    reversal_horizon_numeric,
    solve_root,
    wealth_threshold,
)

__version__ = "0.1.0"
