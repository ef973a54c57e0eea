"""Domain types and closed-form results for growth-rate-optimal payment choice.

A decision maker at time ``t0`` with wealth ``wealth0`` chooses between an
earlier payment ``dx_a`` at ``t_a`` and a later, larger payment ``dx_b`` at
``t_b``. They pick the option under which their wealth grows faster. How the
growth rate is computed depends on two circumstances:

* wealth dynamics, additive (background rate ``k``, currency per year) or
  multiplicative (background rate ``r``, per year);
* the time frame, fixed (growth measured from ``t0`` to ``t_b`` for both
  options) or adaptive (growth measured from ``t0`` to the chosen payment).

The four combinations are labelled A (fixed/additive), B (fixed/multiplicative),
C (adaptive/additive) and D (adaptive/multiplicative).

Units: time in years, money in abstract currency units.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from ._backend import kernels as _k
from .errors import (
    InvalidProblem,
    NonPositiveHorizon,
    UndefinedDiscount,
    UnitsMismatch,
    WealthNonPositive,
)

DEFAULT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Problem:
    """One riskless intertemporal payment problem.

    Attributes:
        t0: Decision time.
        t_a: Time of the earlier payment.
        t_b: Time of the later payment.
        dx_a: Earlier payment amount.
        dx_b: Later payment amount, strictly larger than ``dx_a``.
        wealth0: Wealth at the decision time.
    """

    t0: float
    t_a: float
    t_b: float
    dx_a: float
    dx_b: float
    wealth0: float = 0.0

    def __post_init__(self):
        vals = (self.t0, self.t_a, self.t_b, self.dx_a, self.dx_b, self.wealth0)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidProblem(f"all fields must be finite, got {vals}")
        if not self.t0 < self.t_a < self.t_b:
            raise InvalidProblem(
                f"need t0 < t_a < t_b, got t0={self.t0}, t_a={self.t_a}, t_b={self.t_b}"
            )
        if self.dx_a < 0:
            raise InvalidProblem(f"dx_a must be non-negative, got {self.dx_a}")
        if not self.dx_b > self.dx_a:
            raise InvalidProblem(f"need dx_b > dx_a, got dx_a={self.dx_a}, dx_b={self.dx_b}")
        if self.wealth0 < 0:
            raise InvalidProblem(f"wealth0 must be non-negative, got {self.wealth0}")

    @classmethod
    def from_horizon(
        cls, horizon: float, delay: float, dx_a: float, dx_b: float, wealth0: float = 0.0, t0: float = 0.0
    ) -> "Problem":
        """Build a problem from horizon and delay instead of absolute times."""
        t_a = t0 + horizon
        return cls(t0=t0, t_a=t_a, t_b=t_a + delay, dx_a=dx_a, dx_b=dx_b, wealth0=wealth0)

    @property
    def horizon(self) -> float:
        """Time from the decision to the earlier payment."""
        return self.t_a - self.t0

    @property
    def delay(self) -> float:
        """Time between the two payments."""
        return self.t_b - self.t_a


@dataclass(frozen=True)
class Additive:
    """Linear wealth growth at ``k`` currency units per year (``k`` may be negative)."""

    k: float

    @property
    def rate(self) -> float:
        return self.k


@dataclass(frozen=True)
class Multiplicative:
    """Exponential wealth growth at ``r`` per year."""

    r: float

    @property
    def rate(self) -> float:
        return self.r


Dynamics = Union[Additive, Multiplicative]


class TimeFrame(enum.Enum):
    FIXED = "fixed"
    ADAPTIVE = "adaptive"


class Case(enum.Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


_CASE_CODES = {Case.A: _k.CASE_A, Case.B: _k.CASE_B, Case.C: _k.CASE_C, Case.D: _k.CASE_D}


@dataclass(frozen=True)
class Specification:
    dynamics: Dynamics
    time_frame: TimeFrame

    @property
    def case(self) -> Case:
        additive = isinstance(self.dynamics, Additive)
        if self.time_frame is TimeFrame.FIXED:
            return Case.A if additive else Case.B
        return Case.C if additive else Case.D

    @property
    def multiplicative(self) -> bool:
        return isinstance(self.dynamics, Multiplicative)

    @property
    def units(self) -> "Units":
        return Units.PER_TIME if self.multiplicative else Units.CURRENCY_PER_TIME

    @classmethod
    def for_case(cls, case: Case | str, rate: float = 0.0) -> "Specification":
        """Specification for a case label with background rate ``rate``."""
        case = Case(case)
        frame = TimeFrame.FIXED if case in (Case.A, Case.B) else TimeFrame.ADAPTIVE
        dyn = Additive(rate) if case in (Case.A, Case.C) else Multiplicative(rate)
        return cls(dyn, frame)


def case_code(case: Case) -> int:
    return _CASE_CODES[case]


class Units(enum.Enum):
    CURRENCY_PER_TIME = "currency/yr"
    PER_TIME = "1/yr"


@dataclass(frozen=True)
class GrowthRate:
    """A growth rate tagged with its units.

    Additive and multiplicative rates have different dimensions, so ordering
    comparisons between them raise :class:`UnitsMismatch`.
    """

    value: float
    units: Units

    def _check(self, other: "GrowthRate"):
        if not isinstance(other, GrowthRate):
            return NotImplemented
        if other.units is not self.units:
            raise UnitsMismatch(f"cannot compare {self.units.value} with {other.units.value}")
        return None

    def __lt__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.value < other.value

    def __le__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.value <= other.value

    def __gt__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.value > other.value

    def __ge__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.value >= other.value

    def __sub__(self, other: "GrowthRate") -> float:
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.value - other.value


class Option(enum.Enum):
    A_EARLIER = "a"
    B_LATER = "b"


class Preference(enum.Enum):
    EARLIER = "EarlierPreferred"
    LATER = "LaterPreferred"
    INDIFFERENT = "Indifferent"


@dataclass(frozen=True)
class Decision:
    preference: Preference
    g_a: GrowthRate
    g_b: GrowthRate
    tolerance_used: float


class DiscountCase(enum.Enum):
    B = "B"
    C = "C"
    D_HYBRID_APPROX = "DHybridApprox"
    D_NUMERIC = "DNumeric"


@dataclass(frozen=True)
class DiscountFactor:
    """Ratio of earlier to later payment at indifference.

    ``horizon`` and ``rate`` are ``None`` when the case does not use them.
    """

    value: float
    case: DiscountCase
    delay: float
    horizon: float | None = None
    rate: float | None = None


class ThresholdKind(enum.Enum):
    HORIZON = "horizon"
    DECISION_TIME = "decision_time"
    WEALTH = "wealth"
    NONE = "none"


@dataclass(frozen=True)
class Threshold:
    """A preference-reversal threshold, or the reason none exists."""

    kind: ThresholdKind
    value: float | None = None
    reason: str | None = None

    @classmethod
    def horizon(cls, h_pr: float) -> "Threshold":
        if not h_pr > 0:
            raise ValueError(f"reversal horizon must be positive, got {h_pr}")
        return cls(ThresholdKind.HORIZON, h_pr)

    @classmethod
    def decision_time(cls, t0_pr: float) -> "Threshold":
        return cls(ThresholdKind.DECISION_TIME, t0_pr)

    @classmethod
    def wealth(cls, x_pr: float) -> "Threshold":
        if not x_pr > 0:
            raise ValueError(f"wealth threshold must be positive, got {x_pr}")
        return cls(ThresholdKind.WEALTH, x_pr)

    @classmethod
    def none(cls, reason: str) -> "Threshold":
        return cls(ThresholdKind.NONE, None, reason)

    @property
    def exists(self) -> bool:
        return self.kind is not ThresholdKind.NONE


def _check_wealth(spec: Specification, problem: Problem):
    if spec.multiplicative and not problem.wealth0 > 0:
        raise WealthNonPositive(
            f"multiplicative dynamics need positive wealth, got {problem.wealth0}"
        )


def growth_rate(spec: Specification, option: Option | str, problem: Problem) -> GrowthRate:
    """Growth rate of wealth if ``option`` is chosen.

    Args:
        spec: Dynamics and time frame.
        option: ``Option.A_EARLIER`` / ``"a"`` or ``Option.B_LATER`` / ``"b"``.
        problem: The payment problem.

    Raises:
        WealthNonPositive: Multiplicative dynamics with ``wealth0 <= 0``.
    """
    option = Option(option)
    _check_wealth(spec, problem)
    code = case_code(spec.case)
    rate = spec.dynamics.rate
    H, D = problem.horizon, problem.delay
    if option is Option.A_EARLIER:
        value = _k.rate_a(code, H, D, problem.dx_a, problem.wealth0, rate)
    else:
        value = _k.rate_b(code, H, D, problem.dx_b, problem.wealth0, rate)
    return GrowthRate(value, spec.units)


def classify(diff: float, tolerance: float) -> Preference:
    """Map ``g_a - g_b`` onto a preference with an absolute indifference band."""
    if diff > tolerance:
        return Preference.EARLIER
    if -diff > tolerance:
        return Preference.LATER
    return Preference.INDIFFERENT


def prefer(spec: Specification, problem: Problem, tolerance: float = DEFAULT_TOLERANCE) -> Decision:
    """Growth-optimal preference between the two payments.

    ``tolerance`` is an absolute band on ``g_a - g_b`` in the rate's own
    units inside which the options count as equally good.
    """
    if not tolerance >= 0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance}")
    g_a = growth_rate(spec, Option.A_EARLIER, problem)
    g_b = growth_rate(spec, Option.B_LATER, problem)
    return Decision(classify(g_a - g_b, tolerance), g_a, g_b, tolerance)


def discount_closed(case: DiscountCase | str, delay: float, horizon: float | None = None, rate: float = 0.0) -> DiscountFactor:
    """Closed-form discount factor.

    B gives ``exp(-r D)``, C gives ``1 / (1 + D/H)`` and the small-payment
    approximation to D gives their product. Case A never reaches indifference
    and has no discount factor. With negative ``rate`` the case-B value
    exceeds 1.

    Raises:
        UndefinedDiscount: For case A.
        NonPositiveHorizon: When C or the hybrid form gets ``horizon <= 0``.
    """
    if case in ("A", Case.A):
        raise UndefinedDiscount("no discount factor in case A: the larger payment always wins")
    case = DiscountCase(case)
    if case is DiscountCase.D_NUMERIC:
        raise ValueError("the general case-D discount factor has no closed form; use solvers.indifference_ratio_numeric")
    if not delay >= 0:
        raise ValueError(f"delay must be non-negative, got {delay}")
    if case is DiscountCase.B:
        return DiscountFactor(math.exp(-rate * delay), case, delay, None, rate)
    if horizon is None or not horizon > 0:
        raise NonPositiveHorizon(f"horizon must be positive, got {horizon}")
    hyperbolic = 1.0 / (1.0 + delay / horizon)
    if case is DiscountCase.C:
        return DiscountFactor(hyperbolic, case, delay, horizon, None)
    return DiscountFactor(math.exp(-rate * delay) * hyperbolic, case, delay, horizon, rate)


class ReversalCase(enum.Enum):
    C = "C"
    D_SMALL_PAYMENT = "DSmallPayment"


def reversal_horizon_closed(
    case: ReversalCase | str, delay: float, dx_a: float, dx_b: float, rate: float = 0.0
) -> Threshold:
    """Horizon at which preference reverses, in closed form.

    For C this is exact; for D it holds to first order in payment/wealth.
    A missing threshold is returned as ``Threshold.none`` with the reason.
    """
    case = ReversalCase(case)
    if not delay > 0:
        raise ValueError(f"delay must be positive, got {delay}")
    if not (dx_a > 0 and dx_b > 0):
        raise ValueError(f"payments must be positive, got dx_a={dx_a}, dx_b={dx_b}")
    if case is ReversalCase.C:
        if not dx_b > dx_a:
            return Threshold.none("requires dx_b > dx_a")
        return Threshold.horizon(delay * dx_a / (dx_b - dx_a))
    grown = dx_a * math.exp(rate * delay)
    if not dx_b > grown:
        return Threshold.none(
            "requires dx_b > dx_a*exp(r*D); earlier payment is always preferred"
        )
    return Threshold.horizon(delay * grown / (dx_b - grown))


def critical_decision_time(problem: Problem) -> Threshold:
    """Case-C decision time at which the two payments are equally good.

    Equals ``t_a - H_pr``; deciding later than this favours the earlier payment.
    """
    num = problem.dx_b * problem.t_a - problem.dx_a * problem.t_b
    return Threshold.decision_time(num / (problem.dx_b - problem.dx_a))


def wealth_effect_condition(problem: Problem, rate: float) -> bool:
    """True when a case-D wealth threshold exists.

    Very poor decision makers always take the earlier payment; very rich ones
    take the later payment only if ``dx_b > dx_a e^{rD} (H+D)/H``.
    """
    H, D = problem.horizon, problem.delay
    return problem.dx_b > problem.dx_a * math.exp(rate * D) * (H + D) / H


def prefer_many(spec: Specification, horizon, delay, dx_a, dx_b, wealth0=0.0, tolerance: float = DEFAULT_TOLERANCE):
    """Vectorised :func:`prefer` over broadcastable arrays.

    Returns an int8 array: +1 earlier preferred, -1 later preferred,
    0 indifferent. Inputs are not validated as :class:`Problem` instances,
    so callers must keep them inside the valid domain.
    """
    if spec.multiplicative and not np.all(np.asarray(wealth0) > 0):
        raise WealthNonPositive("multiplicative dynamics need positive wealth")
    arrs = np.broadcast_arrays(*(np.asarray(a, dtype=np.float64) for a in (horizon, delay, dx_a, dx_b, wealth0)))
    shape = arrs[0].shape
    flat = [np.ascontiguousarray(a.ravel()) for a in arrs]
    codes = _k.prefer_many(case_code(spec.case), *flat, float(spec.dynamics.rate), float(tolerance))
    return np.asarray(codes).reshape(shape)
