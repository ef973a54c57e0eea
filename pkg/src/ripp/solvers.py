"""Numeric thresholds for case D, where the indifference conditions are implicit.

All three quantities are roots of ``g_a - g_b`` along one axis:

* the payment ratio ``dx_a / dx_b`` (general discount factor),
* the horizon ``H`` (preference reversal as the payments approach),
* initial wealth (the wealth effect).

Roots are found by geometric bracketing followed by bisection with secant
steps. When several crossings exist, the first one found from the seed is
returned; uniqueness is not assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ._backend import kernels as _k
from .core import (
    DiscountCase,
    DiscountFactor,
    Problem,
    Threshold,
    wealth_effect_condition,
)
from .errors import MaxIterations, NoSignChange, WealthNonPositive


@dataclass(frozen=True)
class RootConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_iter: int = 200
    bracket_expansion_factor: float = 2.0
    max_bracket_expansions: int = 60

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_iter <= 0 or self.max_bracket_expansions <= 0:
            raise ValueError("iteration limits must be positive")
        if not self.bracket_expansion_factor > 1:
            raise ValueError("bracket_expansion_factor must exceed 1")


DEFAULT_CONFIG = RootConfig()


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def solve_root(
    f: Callable[[float], float],
    bracket: tuple[float, float],
    cfg: RootConfig = DEFAULT_CONFIG,
    expand: bool = False,
) -> float:
    """Root of ``f`` inside ``bracket``.

    Bisection with a secant step tried on alternate iterations; the bisection
    steps guarantee the interval at least halves every two iterations.

    Args:
        f: Continuous function.
        bracket: ``(lo, hi)`` with ``lo < hi``.
        cfg: Tolerances and limits.
        expand: If the end points do not straddle a sign change, widen the
            interval symmetrically about its centre by
            ``cfg.bracket_expansion_factor`` up to
            ``cfg.max_bracket_expansions`` times.

    Raises:
        NoSignChange: No sign change found (tangent roots included).
        MaxIterations: Tolerance not reached in ``cfg.max_iter`` steps.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValueError(f"bracket must satisfy lo < hi, got {bracket}")
    flo, fhi = f(lo), f(hi)
    expansions = 0
    while _sign(flo) * _sign(fhi) > 0:
        if not expand or expansions >= cfg.max_bracket_expansions:
            raise NoSignChange(f"f({lo})={flo} and f({hi})={fhi} have the same sign")
        mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo) * cfg.bracket_expansion_factor
        lo, hi = mid - half, mid + half
        flo, fhi = f(lo), f(hi)
        expansions += 1
    return _bisect_secant(f, lo, hi, flo, fhi, cfg)


def _bisect_secant(f, lo, hi, flo, fhi, cfg):
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    for it in range(cfg.max_iter):
        x = 0.5 * (lo + hi)
        if it % 2 == 1:
            s = hi - fhi * (hi - lo) / (fhi - flo)
            if lo < s < hi:
                x = s
        if hi - lo <= cfg.abs_tol + cfg.rel_tol * abs(x):
            return x
        fx = f(x)
        if fx == 0:
            return x
        if _sign(fx) == _sign(flo):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
    raise MaxIterations(f"no convergence in {cfg.max_iter} iterations; last bracket [{lo}, {hi}]")


def _geometric_bracket(f, seed: float, cfg: RootConfig) -> tuple[float, float, float, float] | None:
    """Scan ``seed * factor**j`` away from ``seed`` until ``f`` changes sign.

    Works on the positive half-line. Scans upward when ``f(seed) > 0`` and
    downward otherwise, matching functions that are positive at small
    arguments and negative at large ones.
    """
    q = cfg.bracket_expansion_factor
    x, fx = seed, f(seed)
    if fx == 0:
        return x, x, fx, fx
    up = fx > 0
    for _ in range(cfg.max_bracket_expansions):
        y = x * q if up else x / q
        fy = f(y)
        if _sign(fy) != _sign(fx):
            return (x, y, fx, fy) if up else (y, x, fy, fx)
        x, fx = y, fy
    return None


def _case_d_gap(H, D, dx_a, dx_b, x0, r):
    return _k.gap(_k.CASE_D, H, D, dx_a, dx_b, x0, r)


def indifference_ratio_numeric(
    horizon: float,
    delay: float,
    wealth0: float,
    dx_b: float,
    rate: float,
    cfg: RootConfig = DEFAULT_CONFIG,
) -> DiscountFactor:
    """General case-D discount factor ``dx_a* / dx_b``.

    Solves for the ratio itself on ``(0, 1)`` so the tolerance is relative to
    the payment scale; solving for ``dx_a`` directly loses precision when
    payments are tiny compared with wealth.
    """
    if not wealth0 > 0:
        raise WealthNonPositive(f"multiplicative dynamics need positive wealth, got {wealth0}")
    if not (dx_b > 0 and horizon > 0 and delay >= 0):
        raise ValueError("need dx_b and horizon positive, delay non-negative")
    if delay == 0:
        return DiscountFactor(1.0, DiscountCase.D_NUMERIC, delay, horizon, rate)

    def f(ratio):
        return _case_d_gap(horizon, delay, ratio * dx_b, dx_b, wealth0, rate)

    ratio = solve_root(f, (0.0, 1.0), cfg)
    return DiscountFactor(ratio, DiscountCase.D_NUMERIC, delay, horizon, rate)


def reversal_horizon_numeric(
    delay: float,
    dx_a: float,
    dx_b: float,
    wealth0: float,
    rate: float,
    cfg: RootConfig = DEFAULT_CONFIG,
) -> Threshold:
    """Case-D horizon at which earlier and later payments are equally good.

    Exists when ``dx_b > dx_a e^{rD}``; below the threshold horizon the earlier
    payment wins. The search starts at ``H = delay``.
    """
    if not wealth0 > 0:
        raise WealthNonPositive(f"multiplicative dynamics need positive wealth, got {wealth0}")
    if not (delay > 0 and dx_a > 0 and dx_b > 0):
        raise ValueError("need delay and both payments positive")
    if not dx_b > dx_a * math.exp(rate * delay):
        return Threshold.none(
            "requires dx_b > dx_a*exp(r*D); earlier payment is always preferred"
        )

    def f(H):
        return _case_d_gap(H, delay, dx_a, dx_b, wealth0, rate)

    found = _geometric_bracket(f, delay, cfg)
    if found is None:
        raise NoSignChange(
            f"no sign change of g_a - g_b within {cfg.max_bracket_expansions} expansions of H from {delay}"
        )
    lo, hi, flo, fhi = found
    return Threshold.horizon(lo if lo == hi else _bisect_secant(f, lo, hi, flo, fhi, cfg))


def wealth_threshold(problem: Problem, rate: float, cfg: RootConfig = DEFAULT_CONFIG) -> Threshold:
    """Case-D initial wealth at which earlier and later payments are equally good.

    ``problem.wealth0`` is ignored. Poorer decision makers prefer the earlier
    payment; the threshold exists only under :func:`wealth_effect_condition`.
    The search starts at ``wealth0 = dx_b``.
    """
    if not problem.dx_a > 0:
        return Threshold.none("requires dx_a > 0; a zero earlier payment is never preferred")
    if not wealth_effect_condition(problem, rate):
        return Threshold.none("requires dx_b > dx_a*exp(r*D)*(H+D)/H")
    H, D = problem.horizon, problem.delay

    def f(x0):
        return _case_d_gap(H, D, problem.dx_a, problem.dx_b, x0, rate)

    found = _geometric_bracket(f, problem.dx_b, cfg)
    if found is None:
        raise NoSignChange(
            f"no sign change of g_a - g_b within {cfg.max_bracket_expansions} expansions of wealth from {problem.dx_b}"
        )
    lo, hi, flo, fhi = found
    return Threshold.wealth(lo if lo == hi else _bisect_secant(f, lo, hi, flo, fhi, cfg))
