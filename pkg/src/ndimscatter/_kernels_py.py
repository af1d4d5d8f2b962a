"""Pure-numpy adaptive Gauss-Kronrod kernel (fallback for the compiled one).

The integrand is one real component of

    f(x) = num(x) / (lead * prod_k (x - p_k)**m_k) * exp(i a x)

seen through one of three maps:

    MODE_DIRECT  g(x) = f(x)
    MODE_PAIR    g(t) = f(c + t) + f(c - t)        (symmetric about a pole c)
    MODE_INVERT  g(t) = f(c / t) / t**2            (c = +1 or -1, tails)
"""
import math

import numpy as np

from ._gk15 import full_rule

MODE_DIRECT, MODE_PAIR, MODE_INVERT = 0, 1, 2
PART_REAL, PART_IMAG = 0, 1

_NODES, _WK, _WG = (np.array(v) for v in full_rule())


def _f(x, num, poles, mults, lead, a):
    val = np.polynomial.polynomial.polyval(x, num).astype(complex)
    den = np.full(x.shape, lead, dtype=complex)
    for p, m in zip(poles, mults):
        d = x - p
        for _ in range(int(m)):
            den = den * d
    val = val / den
    if a != 0.0:
        val = val * (np.cos(a * x) + 1j * np.sin(a * x))
    return val


def _g(t, num, poles, mults, lead, a, part, mode, center):
    if mode == MODE_DIRECT:
        v = _f(t, num, poles, mults, lead, a)
    elif mode == MODE_PAIR:
        v = _f(center + t, num, poles, mults, lead, a) + _f(center - t, num, poles, mults, lead, a)
    else:
        v = _f(center / t, num, poles, mults, lead, a) / (t * t)
    return v.real if part == PART_REAL else v.imag


def _panel(lo, hi, args):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    y = _g(mid + half * _NODES, *args)
    k = half * float(np.dot(_WK, y))
    g = half * float(np.dot(_WG, y))
    return k, abs(k - g)


def adaptive(num, poles, mults, lead, a, part, mode, center, lo, hi, tol, limit=2000, n_init=1):
    """Globally adaptive 15/7-point integration of one component.

    Returns (value, abserr, n_intervals, converged).  Panels are bisected
    largest-error first until the summed error is <= tol.
    """
    num = np.asarray(num, dtype=float)
    poles = np.asarray(poles, dtype=complex)
    mults = np.asarray(mults, dtype=np.int64)
    args = (num, poles, mults, complex(lead), float(a), int(part), int(mode), float(center))
    n_init = max(1, int(n_init))
    limit = max(int(limit), n_init)
    los = np.empty(limit)
    his = np.empty(limit)
    res = np.empty(limit)
    err = np.empty(limit)
    step = (hi - lo) / n_init
    for i in range(n_init):
        a0 = lo + i * step
        b0 = hi if i == n_init - 1 else lo + (i + 1) * step
        los[i], his[i] = a0, b0
        res[i], err[i] = _panel(a0, b0, args)
    n = n_init
    converged = False
    while True:
        total_err = float(np.sum(err[:n]))
        if total_err <= tol:
            converged = True
            break
        if n >= limit:
            break
        j = int(np.argmax(err[:n]))
        a0, b0 = los[j], his[j]
        m0 = 0.5 * (a0 + b0)
        if not (a0 < m0 < b0):
            break
        los[j], his[j] = a0, m0
        res[j], err[j] = _panel(a0, m0, args)
        los[n], his[n] = m0, b0
        res[n], err[n] = _panel(m0, b0, args)
        n += 1
    order = np.argsort(los[:n], kind="stable")
    value = math.fsum(res[:n][order])
    abserr = math.fsum(err[:n][order])
    return value, abserr, n, converged
