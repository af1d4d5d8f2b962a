# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled adaptive Gauss-Kronrod kernel; same contract as _kernels_py.adaptive."""
import math

import numpy as np

from libc.math cimport cos, sin, fabs

from ._gk15 import full_rule

cdef double NODES[15]
cdef double WK[15]
cdef double WG[15]

_rule = full_rule()
for _i in range(15):
    NODES[_i] = _rule[0][_i]
    WK[_i] = _rule[1][_i]
    WG[_i] = _rule[2][_i]


cdef inline double complex _f(double x, const double[::1] num, const double complex[::1] poles,
                              const long long[::1] mults, double complex lead, double a) noexcept nogil:
    cdef Py_ssize_t k, j
    cdef double complex den = lead
    cdef double complex d
    cdef double p = 0.0
    for k in range(num.shape[0] - 1, -1, -1):
        p = p * x + num[k]
    for k in range(poles.shape[0]):
        d = x - poles[k]
        for j in range(mults[k]):
            den = den * d
    cdef double complex v = p / den
    if a != 0.0:
        v = v * (cos(a * x) + 1j * sin(a * x))
    return v


cdef inline double _g(double t, const double[::1] num, const double complex[::1] poles,
                      const long long[::1] mults, double complex lead, double a,
                      int part, int mode, double center) noexcept nogil:
    cdef double complex v
    if mode == 0:
        v = _f(t, num, poles, mults, lead, a)
    elif mode == 1:
        v = _f(center + t, num, poles, mults, lead, a) + _f(center - t, num, poles, mults, lead, a)
    else:
        v = _f(center / t, num, poles, mults, lead, a) / (t * t)
    if part == 0:
        return v.real
    return v.imag


cdef inline void _panel(double lo, double hi, const double[::1] num, const double complex[::1] poles,
                        const long long[::1] mults, double complex lead, double a,
                        int part, int mode, double center, double* res, double* err) noexcept nogil:
    cdef double half = 0.5 * (hi - lo)
    cdef double mid = 0.5 * (hi + lo)
    cdef double k = 0.0
    cdef double g = 0.0
    cdef double y
    cdef int i
    for i in range(15):
        y = _g(mid + half * NODES[i], num, poles, mults, lead, a, part, mode, center)
        k += WK[i] * y
        g += WG[i] * y
    res[0] = half * k
    err[0] = fabs(half * k - half * g)


def adaptive(num, poles, mults, lead, double a, int part, int mode, double center,
             double lo, double hi, double tol, int limit=2000, int n_init=1):
    cdef const double[::1] num_v = np.ascontiguousarray(num, dtype=np.float64)
    cdef const double complex[::1] pol_v = np.ascontiguousarray(poles, dtype=np.complex128)
    cdef const long long[::1] mul_v = np.ascontiguousarray(mults, dtype=np.int64)
    cdef double complex lead_c = lead
    if n_init < 1:
        n_init = 1
    if limit < n_init:
        limit = n_init
    los_a = np.empty(limit)
    his_a = np.empty(limit)
    res_a = np.empty(limit)
    err_a = np.empty(limit)
    cdef double[::1] los = los_a
    cdef double[::1] his = his_a
    cdef double[::1] res = res_a
    cdef double[::1] err = err_a
    cdef double step = (hi - lo) / n_init
    cdef double a0, b0, m0, total_err, emax
    cdef int i, j, n
    cdef bint converged = False
    with nogil:
        for i in range(n_init):
            a0 = lo + i * step
            b0 = hi if i == n_init - 1 else lo + (i + 1) * step
            los[i] = a0
            his[i] = b0
            _panel(a0, b0, num_v, pol_v, mul_v, lead_c, a, part, mode, center, &res[i], &err[i])
        n = n_init
        while True:
            total_err = 0.0
            emax = -1.0
            j = 0
            for i in range(n):
                total_err += err[i]
                if err[i] > emax:
                    emax = err[i]
                    j = i
            if total_err <= tol:
                converged = True
                break
            if n >= limit:
                break
            a0 = los[j]
            b0 = his[j]
            m0 = 0.5 * (a0 + b0)
            if not (a0 < m0 and m0 < b0):
                break
            his[j] = m0
            _panel(a0, m0, num_v, pol_v, mul_v, lead_c, a, part, mode, center, &res[j], &err[j])
            los[n] = m0
            his[n] = b0
            _panel(m0, b0, num_v, pol_v, mul_v, lead_c, a, part, mode, center, &res[n], &err[n])
            n += 1
    order = np.argsort(los_a[:n], kind="stable")
    value = math.fsum(res_a[:n][order])
    abserr = math.fsum(err_a[:n][order])
    return value, abserr, n, bool(converged)
