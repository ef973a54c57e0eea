"""Repeated-choice simulation.

A decision maker faces an endless stream of payment problems. After each
choice their wealth evolves under the background dynamics and the chosen
payment is added. Under a fixed time frame the next problem arrives at the
later payment time ``t_b`` whatever was chosen; under an adaptive frame it
arrives as soon as the chosen payment is received.

The realized growth rate over a long run is the quantity growth-optimal
choice is meant to maximize, so comparing it across policies on a shared
stream checks the decision rule empirically.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np

from ._backend import kernels as _k
from .core import (
    DEFAULT_TOLERANCE,
    GrowthRate,
    Multiplicative,
    Problem,
    Specification,
    Units,
    case_code,
)
from .errors import DegenerateTrajectory, WealthNonPositive

EVENT_NAMES = {_k.EVENT_START: "start", _k.EVENT_PAYMENT: "payment", _k.EVENT_DECISION: "decision"}
OPTION_NAMES = {-1: "", 0: "a", 1: "b"}

# baseline discount rate when the dynamics carry no rate of their own (per year)
DEFAULT_EXP_RATE = 0.03


def _check_range(name, lo_hi, floor=0.0):
    lo, hi = lo_hi
    if not (math.isfinite(lo) and math.isfinite(hi) and floor <= lo <= hi):
        raise ValueError(f"{name} must satisfy {floor} <= lo <= hi, got {lo_hi}")
    if lo <= 0:
        raise ValueError(f"{name} must be strictly positive, got {lo_hi}")


@dataclass(frozen=True)
class RippStream:
    """Seeded stream of payment problems.

    Each problem draws four uniforms: horizon, delay, earlier payment and a
    premium ``u`` giving ``dx_b = dx_a * (1 + u)``. Row ``i`` of the uniform
    matrix depends only on ``(seed, i)``, so a longer stream extends a
    shorter one with the same seed.

    With ``payment_scale="wealth"`` the payment ranges are fractions of the
    wealth at each decision; this keeps a multiplicative run stationary
    instead of letting payments shrink to nothing as wealth compounds.
    Horizons are kept above ``h_floor``: at very short horizons the growth
    rate of the earlier option diverges.
    """

    seed: int
    count: int
    h_range: tuple[float, float] = (0.5, 2.0)
    d_range: tuple[float, float] = (0.5, 2.0)
    dx_a_range: tuple[float, float] = (50.0, 150.0)
    premium_range: tuple[float, float] = (0.1, 3.0)
    h_floor: float = 0.01
    payment_scale: str = "absolute"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.count <= 0:
            raise ValueError(f"count must be positive, got {self.count}")
        if not self.h_floor > 0:
            raise ValueError(f"h_floor must be positive, got {self.h_floor}")
        _check_range("h_range", self.h_range, self.h_floor)
        _check_range("d_range", self.d_range)
        _check_range("dx_a_range", self.dx_a_range)
        _check_range("premium_range", self.premium_range)
        if self.payment_scale not in ("absolute", "wealth"):
            raise ValueError(f"payment_scale must be 'absolute' or 'wealth', got {self.payment_scale!r}")

    @property
    def relative(self) -> bool:
        return self.payment_scale == "wealth"

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Horizon, delay, earlier and later payment arrays."""
        u = np.random.default_rng(self.seed).random((self.count, 4))

        def scale(col, rng):
            lo, hi = rng
            return lo + (hi - lo) * u[:, col]

        H = scale(0, self.h_range)
        D = scale(1, self.d_range)
        dx_a = scale(2, self.dx_a_range)
        dx_b = dx_a * (1.0 + scale(3, self.premium_range))
        return H, D, dx_a, dx_b

    def problem(self, index: int, t0: float = 0.0, wealth0: float = 0.0) -> Problem:
        """The ``index``-th problem as a :class:`Problem` decided at ``t0``.

        For wealth-scaled streams the payments are multiplied by ``wealth0``.
        """
        H, D, dx_a, dx_b = (a[index] for a in self.arrays())
        scale = wealth0 if self.relative else 1.0
        return Problem.from_horizon(float(H), float(D), float(dx_a * scale), float(dx_b * scale), wealth0, t0)


class PolicyKind(enum.Enum):
    GROWTH_OPTIMAL = "growth-optimal"
    ALWAYS_EARLIER = "always-earlier"
    ALWAYS_LATER = "always-later"
    LARGER_PAYMENT = "larger-payment"
    EXPONENTIAL = "exponential"


_POLICY_CODES = {
    PolicyKind.GROWTH_OPTIMAL: _k.POLICY_GROWTH_OPTIMAL,
    PolicyKind.ALWAYS_EARLIER: _k.POLICY_ALWAYS_EARLIER,
    PolicyKind.ALWAYS_LATER: _k.POLICY_ALWAYS_LATER,
    PolicyKind.LARGER_PAYMENT: _k.POLICY_LARGER_PAYMENT,
    PolicyKind.EXPONENTIAL: _k.POLICY_EXPONENTIAL,
}


@dataclass(frozen=True)
class Policy:
    """How a simulated decision maker chooses.

    ``GROWTH_OPTIMAL`` picks the option with the higher growth rate under the
    true specification (ties go to the earlier payment). ``EXPONENTIAL``
    takes the earlier payment iff ``dx_a >= dx_b * exp(-rate * D)``.
    """

    kind: PolicyKind
    rate: float = 0.0

    @classmethod
    def parse(cls, text: str) -> "Policy":
        """Parse ``growth-optimal`` or ``exponential:0.05`` style names."""
        name, _, arg = text.partition(":")
        kind = PolicyKind(name)
        if kind is PolicyKind.EXPONENTIAL:
            if not arg:
                raise ValueError("exponential policy needs a rate, e.g. exponential:0.05")
            return cls(kind, float(arg))
        if arg:
            raise ValueError(f"policy {name} takes no argument")
        return cls(kind)

    @property
    def label(self) -> str:
        if self.kind is PolicyKind.EXPONENTIAL:
            return f"exponential:{self.rate:g}"
        return self.kind.value


GROWTH_OPTIMAL = Policy(PolicyKind.GROWTH_OPTIMAL)
ALWAYS_EARLIER = Policy(PolicyKind.ALWAYS_EARLIER)
ALWAYS_LATER = Policy(PolicyKind.ALWAYS_LATER)
LARGER_PAYMENT = Policy(PolicyKind.LARGER_PAYMENT)


def baseline_policies(exp_rate: float) -> list[Policy]:
    return [ALWAYS_EARLIER, ALWAYS_LATER, LARGER_PAYMENT, Policy(PolicyKind.EXPONENTIAL, exp_rate)]


@dataclass
class Trajectory:
    """Wealth samples at the start, at every payment, and at every idle decision point.

    ``log_wealth`` is tracked under multiplicative dynamics, where ``wealth``
    itself may overflow on long runs. ``choices`` holds one entry per decision
    (0 = earlier, 1 = later).
    """

    times: np.ndarray
    wealth: np.ndarray
    events: np.ndarray
    sample_choice: np.ndarray
    choices: np.ndarray
    log_wealth: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def final_time(self) -> float:
        return float(self.times[-1])

    @property
    def final_wealth(self) -> float:
        return float(self.wealth[-1])

    def decision_wealth(self) -> np.ndarray:
        """Wealth at each decision, i.e. the sample preceding each payment."""
        idx = np.flatnonzero(self.events == _k.EVENT_PAYMENT)
        return self.wealth[idx - 1]

    def to_csv(self, out: TextIO | None = None) -> str | None:
        """Write ``time,wealth,event_type,chosen_option`` rows (12 significant digits).

        Returns the text when ``out`` is None.
        """
        buf = io.StringIO() if out is None else out
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["time", "wealth", "event_type", "chosen_option"])
        for t, x, e, c in zip(self.times, self.wealth, self.events, self.sample_choice):
            w.writerow([f"{t:.12g}", f"{x:.12g}", EVENT_NAMES[int(e)], OPTION_NAMES[int(c)]])
        return buf.getvalue() if out is None else None


def simulate(
    spec: Specification,
    stream: RippStream,
    policy: Policy,
    wealth0: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Trajectory:
    """Play every problem in ``stream`` with ``policy``.

    Raises:
        WealthNonPositive: Multiplicative wealth at or below zero.
        ValueError: Wealth-scaled payments under additive dynamics.
    """
    if spec.multiplicative and not wealth0 > 0:
        raise WealthNonPositive(f"multiplicative dynamics need positive wealth, got {wealth0}")
    if stream.relative and not spec.multiplicative:
        raise ValueError("wealth-scaled payments need multiplicative dynamics")
    H, D, dx_a, dx_b = stream.arrays()
    times, wealth, logw, events, sample_choice, choices, n, status = _k.simulate_path(
        case_code(spec.case),
        float(spec.dynamics.rate),
        float(wealth0),
        H,
        D,
        dx_a,
        dx_b,
        stream.relative,
        _POLICY_CODES[policy.kind],
        float(policy.rate),
        float(tolerance),
    )
    if status == _k.STATUS_WEALTH_NONPOSITIVE:
        raise WealthNonPositive(f"wealth reached zero after {n} samples")
    return Trajectory(
        times=np.asarray(times)[:n],
        wealth=np.asarray(wealth)[:n],
        events=np.asarray(events)[:n],
        sample_choice=np.asarray(sample_choice)[:n],
        choices=np.asarray(choices),
        log_wealth=np.asarray(logw)[:n] if spec.multiplicative else None,
        meta={"case": spec.case.value, "policy": policy.label, "seed": stream.seed},
    )


def realized_growth(trajectory: Trajectory, dynamics) -> GrowthRate:
    """Time-average growth rate of a whole trajectory under ``dynamics``."""
    elapsed = trajectory.final_time - float(trajectory.times[0])
    if not elapsed > 0:
        raise DegenerateTrajectory("trajectory covers no time")
    if isinstance(dynamics, Multiplicative):
        if trajectory.log_wealth is not None:
            dlog = float(trajectory.log_wealth[-1] - trajectory.log_wealth[0])
        else:
            x0, x1 = float(trajectory.wealth[0]), trajectory.final_wealth
            if not (x0 > 0 and x1 > 0):
                raise DegenerateTrajectory("multiplicative growth needs positive wealth")
            dlog = math.log(x1) - math.log(x0)
        return GrowthRate(dlog / elapsed, Units.PER_TIME)
    return GrowthRate((trajectory.final_wealth - float(trajectory.wealth[0])) / elapsed, Units.CURRENCY_PER_TIME)


def compare_policies(
    spec: Specification,
    stream: RippStream,
    wealth0: float,
    policies: list[Policy] | None = None,
    exp_rate: float | None = None,
) -> dict[str, GrowthRate]:
    """Realized growth of each policy on the same stream, growth-optimal first.

    ``exp_rate`` defaults to the riskless rate: the background rate for
    multiplicative dynamics, :data:`DEFAULT_EXP_RATE` otherwise.
    """
    if policies is None:
        if exp_rate is None:
            exp_rate = spec.dynamics.rate if spec.multiplicative else DEFAULT_EXP_RATE
        policies = [GROWTH_OPTIMAL, *baseline_policies(exp_rate)]
    return {p.label: realized_growth(simulate(spec, stream, p, wealth0), spec.dynamics) for p in policies}
