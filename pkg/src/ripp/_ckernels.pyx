# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels; mirrors ``_pykernels`` operation for operation."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, log1p

cnp.import_array()

DEF C_A = 0
DEF C_B = 1
DEF C_C = 2
DEF C_D = 3

CASE_A = C_A
CASE_B = C_B
CASE_C = C_C
CASE_D = C_D

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


cdef inline double _excess_a(int case, double H, double D, double dx, double x0, double rate) nogil:
    if case == C_A:
        return dx / (H + D)
    if case == C_B:
        return log1p(dx * exp(-rate * H) / x0) / (H + D)
    if case == C_C:
        return dx / H
    return log1p(dx * exp(-rate * H) / x0) / H


cdef inline double _excess_b(int case, double H, double D, double dx, double x0, double rate) nogil:
    cdef double T = H + D
    if case == C_A or case == C_C:
        return dx / T
    return log1p(dx * exp(-rate * T) / x0) / T


cdef inline double _rate_a(int case, double H, double D, double dx, double x0, double rate) nogil:
    return _excess_a(case, H, D, dx, x0, rate) + rate


cdef inline double _rate_b(int case, double H, double D, double dx, double x0, double rate) nogil:
    return _excess_b(case, H, D, dx, x0, rate) + rate


cpdef double excess_a(int case, double H, double D, double dx, double x0, double rate):
    return _excess_a(case, H, D, dx, x0, rate)


cpdef double excess_b(int case, double H, double D, double dx, double x0, double rate):
    return _excess_b(case, H, D, dx, x0, rate)


cpdef double rate_a(int case, double H, double D, double dx, double x0, double rate):
    return _rate_a(case, H, D, dx, x0, rate)


cpdef double rate_b(int case, double H, double D, double dx, double x0, double rate):
    return _rate_b(case, H, D, dx, x0, rate)


cpdef double gap(int case, double H, double D, double dx_a, double dx_b, double x0, double rate):
    return _excess_a(case, H, D, dx_a, x0, rate) - _excess_b(case, H, D, dx_b, x0, rate)


def rates_many(int case, const double[::1] H, const double[::1] D, const double[::1] dx_a,
               const double[::1] dx_b, const double[::1] x0, double rate):
    cdef Py_ssize_t i, n = H.shape[0]
    ga_arr = np.empty(n)
    gb_arr = np.empty(n)
    cdef double[::1] ga = ga_arr
    cdef double[::1] gb = gb_arr
    with nogil:
        for i in range(n):
            ga[i] = _rate_a(case, H[i], D[i], dx_a[i], x0[i], rate)
            gb[i] = _rate_b(case, H[i], D[i], dx_b[i], x0[i], rate)
    return ga_arr, gb_arr


def prefer_many(int case, const double[::1] H, const double[::1] D, const double[::1] dx_a,
                const double[::1] dx_b, const double[::1] x0, double rate, double tol):
    cdef Py_ssize_t i, n = H.shape[0]
    cdef double d
    out_arr = np.zeros(n, dtype=np.int8)
    cdef cnp.int8_t[::1] out = out_arr
    with nogil:
        for i in range(n):
            d = _rate_a(case, H[i], D[i], dx_a[i], x0[i], rate) - _rate_b(
                case, H[i], D[i], dx_b[i], x0[i], rate)
            if d > tol:
                out[i] = 1
            elif -d > tol:
                out[i] = -1
    return out_arr


cdef inline int _choose(int case, int policy, double policy_rate, double tol, double H, double D,
                        double dx_a, double dx_b, double x0, double rate) nogil:
    cdef double d
    if policy == 0:
        d = _rate_a(case, H, D, dx_a, x0, rate) - _rate_b(case, H, D, dx_b, x0, rate)
        return 1 if -d > tol else 0
    if policy == 1:
        return 0
    if policy == 2:
        return 1
    if policy == 3:
        return 1 if dx_b > dx_a else 0
    return 0 if dx_a >= dx_b * exp(-policy_rate * D) else 1


def simulate_path(int case, double rate, double wealth0, const double[::1] H, const double[::1] D,
                  const double[::1] dx_a, const double[::1] dx_b, bint relative, int policy,
                  double policy_rate, double tol):
    cdef Py_ssize_t n = H.shape[0]
    cdef Py_ssize_t m = 2 * n + 1
    times_arr = np.zeros(m)
    wealth_arr = np.zeros(m)
    logw_arr = np.zeros(m)
    events_arr = np.zeros(m, dtype=np.int8)
    sample_choice_arr = np.full(m, -1, dtype=np.int8)
    choices_arr = np.full(n, -1, dtype=np.int8)
    cdef double[::1] times = times_arr
    cdef double[::1] wealth = wealth_arr
    cdef double[::1] logw_out = logw_arr
    cdef cnp.int8_t[::1] events = events_arr
    cdef cnp.int8_t[::1] sample_choice = sample_choice_arr
    cdef cnp.int8_t[::1] choices = choices_arr

    cdef bint multiplicative = case == C_B or case == C_D
    cdef bint fixed = case == C_A or case == C_B
    cdef double t = 0.0, w = wealth0, logw = 0.0, x0, h, d, tau, dx
    cdef Py_ssize_t i, k
    cdef int c, status = 0

    if multiplicative:
        if wealth0 <= 0.0:
            return (times_arr, wealth_arr, logw_arr, events_arr, sample_choice_arr,
                    choices_arr, 0, STATUS_WEALTH_NONPOSITIVE)
        logw = log(wealth0)
        logw_out[0] = logw
    times[0] = t
    wealth[0] = w
    events[0] = EVENT_START
    k = 1

    with nogil:
        for i in range(n):
            h = H[i]
            d = D[i]
            if multiplicative:
                if not w > 0.0:
                    status = 1
                    break
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
            events[k] = 1
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
                events[k] = 2
                k += 1

    return (times_arr, wealth_arr, logw_arr, events_arr, sample_choice_arr, choices_arr,
            k, status)
