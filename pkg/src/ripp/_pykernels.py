"""Pure-Python numerical kernels.

Reference implementation of the hot loops. ``_ckernels.pyx`` mirrors every
function here with the same signature and the same floating-point operation
order, so both backends agree to the last bit on the same platform libm.

Case codes: 0 = A (fixed, additive), 1 = B (fixed, multiplicative),
2 = C (adaptive, additive), 3 = D (adaptive, multiplicative).
"""

import math
from math import inf, log, log1p

import numpy as np

CASE_A = 0
CASE_B = 1
CASE_C = 2
CASE_D = 3

POLICY_GROWTH_OPTIMAL = 0
POLICY_ALWAYS_EARLIER = 1
POLICY_ALWAYS_LATER = 2
POLICY_LARGER_PAYMENT = 3
POLICY_EXPONENTIAL = 4

EVENT_START = 0
EVENT_PAYMENT = 1
EVENT_DECISION = 2

STATUS_OK = 0
STATUS_WEALTH_NONPOSITIVE = 1


def exp(x):
    # libm returns inf on overflow; math.exp raises
    try:
        return math.exp(x)
    except OverflowError:
        return inf


def excess_a(case, H, D, dx, x0, rate):
    """Growth rate of the earlier option minus the background rate."""
    if case == CASE_A:
        return dx / (H + D)
    if case == CASE_B:
        return log1p(dx * exp(-rate * H) / x0) / (H + D)
    if case == CASE_C:
        return dx / H
    return log1p(dx * exp(-rate * H) / x0) / H


def excess_b(case, H, D, dx, x0, rate):
    """Growth rate of the later option minus the background rate."""
    T = H + D
    if case == CASE_A or case == CASE_C:
        return dx / T
    return log1p(dx * exp(-rate * T) / x0) / T


def rate_a(case, H, D, dx, x0, rate):
    return excess_a(case, H, D, dx, x0, rate) + rate


def rate_b(case, H, D, dx, x0, rate):
    return excess_b(case, H, D, dx, x0, rate) + rate


def gap(case, H, D, dx_a, dx_b, x0, rate):
    """``g_a - g_b`` with the background rate cancelled analytically."""
    return excess_a(case, H, D, dx_a, x0, rate) - excess_b(case, H, D, dx_b, x0, rate)


def rates_many(case, H, D, dx_a, dx_b, x0, rate):
    """Both growth rates over equal-length float64 arrays."""
    n = H.shape[0]
    ga = np.empty(n)
    gb = np.empty(n)
    for i in range(n):
        ga[i] = rate_a(case, H[i], D[i], dx_a[i], x0[i], rate)
        gb[i] = rate_b(case, H[i], D[i], dx_b[i], x0[i], rate)
    return ga, gb


def prefer_many(case, H, D, dx_a, dx_b, x0, rate, tol):
    """Preference codes: +1 earlier, -1 later, 0 indifferent."""
    n = H.shape[0]
    out = np.zeros(n, dtype=np.int8)
    for i in range(n):
        d = rate_a(case, H[i], D[i], dx_a[i], x0[i], rate) - rate_b(
            case, H[i], D[i], dx_b[i], x0[i], rate
        )
        if d > tol:
            out[i] = 1
        elif -d > tol:
            out[i] = -1
    return out


def _choose(case, policy, policy_rate, tol, H, D, dx_a, dx_b, x0, rate):
    # 0 = earlier, 1 = later; ties go to the earlier payment
    if policy == POLICY_GROWTH_OPTIMAL:
        d = rate_a(case, H, D, dx_a, x0, rate) - rate_b(case, H, D, dx_b, x0, rate)
        return 1 if -d > tol else 0
    if policy == POLICY_ALWAYS_EARLIER:
        return 0
    if policy == POLICY_ALWAYS_LATER:
        return 1
    if policy == POLICY_LARGER_PAYMENT:
        return 1 if dx_b > dx_a else 0
    return 0 if dx_a >= dx_b * exp(-policy_rate * D) else 1


def simulate_path(case, rate, wealth0, H, D, dx_a, dx_b, relative, policy, policy_rate, tol):
    """Run one repeated-choice trajectory.

    Under multiplicative dynamics the state is log-wealth so long runs do not
    overflow. With ``relative`` set, ``dx_a``/``dx_b`` are fractions of the
    wealth at each decision (multiplicative dynamics only).

    Returns ``(times, wealth, log_wealth, events, sample_choice, choices,
    n_samples, status)``; arrays are over-allocated, slice with ``n_samples``.
    """
    n = H.shape[0]
    m = 2 * n + 1
    times = np.zeros(m)
    wealth = np.zeros(m)
    logw_out = np.zeros(m)
    events = np.zeros(m, dtype=np.int8)
    sample_choice = np.full(m, -1, dtype=np.int8)
    choices = np.full(n, -1, dtype=np.int8)

    multiplicative = case == CASE_B or case == CASE_D
    fixed = case == CASE_A or case == CASE_B

    t = 0.0
    w = wealth0
    logw = 0.0
    if multiplicative:
        if wealth0 <= 0.0:
            return times, wealth, logw_out, events, sample_choice, choices, 0, STATUS_WEALTH_NONPOSITIVE
        logw = log(wealth0)
        logw_out[0] = logw
    times[0] = t
    wealth[0] = w
    events[0] = EVENT_START
    k = 1

    for i in range(n):
        h = H[i]
        d = D[i]
        if multiplicative:
            if not w > 0.0:
                return times, wealth, logw_out, events, sample_choice, choices, k, STATUS_WEALTH_NONPOSITIVE
            if relative:
                x0 = 1.0
            else:
                x0 = w
        else:
            x0 = w
        c = _choose(case, policy, policy_rate, tol, h, d, dx_a[i], dx_b[i], x0, rate)
        choices[i] = c
        if c == 0:
            tau = h
            dx = dx_a[i]
        else:
            tau = h + d
            dx = dx_b[i]
        t = t + tau
        if multiplicative:
            if relative:
                logw = logw + rate * tau + log1p(dx * exp(-rate * tau))
            else:
                logw = logw + rate * tau
                logw = logw + log1p(dx * exp(-logw))
            w = exp(logw)
        else:
            w = w + rate * tau + dx
        times[k] = t
        wealth[k] = w
        logw_out[k] = logw
        events[k] = EVENT_PAYMENT
        sample_choice[k] = c
        k += 1
        if fixed and c == 0:
            t = t + d
            if multiplicative:
                logw = logw + rate * d
                w = exp(logw)
            else:
                w = w + rate * d
            times[k] = t
            wealth[k] = w
            logw_out[k] = logw
            events[k] = EVENT_DECISION
            k += 1

    return times, wealth, logw_out, events, sample_choice, choices, k, STATUS_OK
