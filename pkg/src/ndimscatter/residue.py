"""Residue-calculus reference values for rational * exp(iax) integrands.

Real poles are given a value by displacing them off the axis (outgoing or
incoming), or by the half-residue rule for the principal value.  The
contour is always closed in the upper half plane, so ``osc_freq >= 0``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .integrands import Branch, PoleSite, RationalOscIntegrand
from .poles import DegreeTooHigh, find_poles, shifted_poles

__all__ = [
    "DegreeTooHigh",
    "NotAPole",
    "ArcDoesNotVanish",
    "HigherOrderRealPole",
    "ShiftedResult",
    "find_poles",
    "shifted_poles",
    "residue_at",
    "shifted_value",
    "shifted_result",
    "principal_value",
    "damped_value",
    "semicircle_contribution",
    "arc_bound",
]

MAX_MULTIPLICITY = 4


class NotAPole(ValueError):
    pass


class ArcDoesNotVanish(ValueError):
    pass


class HigherOrderRealPole(ValueError):
    pass


@dataclass(frozen=True)
class ShiftedResult:
    epsilon: float
    value: complex


def _taylor(coeffs, z0: complex, n: int) -> list:
    """First n Taylor coefficients of the polynomial about z0."""
    c = [complex(x) for x in coeffs]
    out = []
    for _ in range(n):
        if not c:
            out.append(0j)
            continue
        # synthetic division by (z - z0): remainder is the value
        acc = 0j
        quotient = []
        for a in reversed(c):
            acc = acc * z0 + a
            quotient.append(acc)
        out.append(quotient[-1])
        c = list(reversed(quotient[:-1]))
    return out


def _series_mul(u, v, n):
    return [sum(u[j] * v[k - j] for j in range(k + 1)) for k in range(n)]


def _series_div(u, v, n):
    if v[0] == 0:
        raise ZeroDivisionError("series division by zero constant term")
    w = []
    for k in range(n):
        acc = u[k] - sum(w[j] * v[k - j] for j in range(k))
        w.append(acc / v[0])
    return w


def _exp_series(a: float, z0: complex, n: int):
    base = cmath.exp(1j * a * z0)
    return [base * (1j * a) ** k / math.factorial(k) for k in range(n)]


def residue_at(f: RationalOscIntegrand, p: PoleSite) -> complex:
    """Residue of f at the pole p (exact cofactor differentiation for m > 1)."""
    z0 = complex(p.location)
    m = p.multiplicity
    if m > MAX_MULTIPLICITY:
        raise NotImplementedError(f"multiplicity {m} > {MAX_MULTIPLICITY}")
    den_t = _taylor(f.denominator, z0, m + max(m, 1))
    scale = max(abs(c) for c in f.denominator) * (1 + abs(z0)) ** len(f.denominator)
    if any(abs(den_t[j]) > 1e-6 * scale for j in range(m)) or abs(den_t[m]) <= 1e-12 * scale:
        raise NotAPole(f"{z0} is not a pole of multiplicity {m}")
    num_t = _taylor(f.numerator, z0, m)
    if m == 1:
        return complex(num_t[0] * cmath.exp(1j * f.osc_freq * z0) / den_t[1])
    cof = den_t[m:2 * m]
    g = _series_div(num_t, cof, m)
    g = _series_mul(g, _exp_series(f.osc_freq, z0, m), m)
    return complex(g[m - 1])


def _factored_residue(f: RationalOscIntegrand, poles, j: int) -> complex:
    """Residue at poles[j] with the denominator in factored form lead*prod(z-p)^m."""
    z0, m = poles[j]
    lead = f.denominator[-1]
    g = _taylor(f.numerator, z0, m)
    g = [x / lead for x in g]
    for i, (zi, mi) in enumerate(poles):
        if i == j:
            continue
        # 1/(z - zi)^mi about z0: (d + t)^-mi with d = z0 - zi
        d = z0 - zi
        inv = [(-1) ** k * math.comb(mi + k - 1, k) / d ** (mi + k) for k in range(m)]
        g = _series_mul(g, inv, m)
    g = _series_mul(g, _exp_series(f.osc_freq, z0, m), m)
    return complex(g[m - 1])


def _check_closure(f: RationalOscIntegrand):
    if not f.arc_vanishes():
        raise ArcDoesNotVanish(
            f"degree gap {f.den_degree - f.num_degree} too small for osc_freq={f.osc_freq}")


def _shift_sign(shift) -> int:
    return Branch.parse(shift).shift_sign


def shifted_value(f: RationalOscIntegrand, shift, epsilon: float = 0.0) -> complex:
    """2*pi*i times the residues above the axis after displacing real poles by eps.

    ``epsilon == 0`` returns the eps -> 0+ limit.
    """
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    _check_closure(f)
    sgn = _shift_sign(shift)
    if epsilon == 0:
        total = 0j
        for p in find_poles(f):
            z = p.location
            up = z.imag > 0 if not p.on_real_axis else sgn * z.real > 0
            if p.on_real_axis and z.real == 0:
                raise ValueError("a real pole at the origin has no outgoing/incoming direction")
            if up:
                total += residue_at(f, p)
        return 2j * math.pi * total
    poles = shifted_poles(f, shift, epsilon)
    total = 0j
    for j, (z, m) in enumerate(poles):
        if z.imag > 0:
            total += _factored_residue(f, poles, j)
    return 2j * math.pi * total


def shifted_result(f: RationalOscIntegrand, shift, epsilon: float) -> ShiftedResult:
    return ShiftedResult(epsilon, shifted_value(f, shift, epsilon))


def principal_value(f: RationalOscIntegrand) -> complex:
    """2*pi*i * (upper residues) + pi*i * (residues at real simple poles)."""
    _check_closure(f)
    upper = 0j
    axis = 0j
    for p in find_poles(f):
        if p.on_real_axis:
            if p.multiplicity > 1:
                raise HigherOrderRealPole(f"real pole {p.location.real} has multiplicity {p.multiplicity}")
            axis += residue_at(f, p)
        elif p.location.imag > 0:
            upper += residue_at(f, p)
    value = 2j * math.pi * upper + 1j * math.pi * axis
    if any(p.on_real_axis and p.location.real != 0 for p in find_poles(f)):
        mean = 0.5 * (shifted_value(f, Branch.OUTGOING) + shifted_value(f, Branch.INCOMING))
        assert abs(mean - value) <= 1e-12 * max(1.0, abs(value)), (mean, value)
    return value


def damped_value(f: RationalOscIntegrand, branch) -> complex:
    """Abel-damped value: the a -> 0+ limit of the residue sum.

    Used where the plain integral of x^m/(x^2 - sigma^2) is not absolutely
    defined.  The polynomial part of num/den is dropped (its Fourier transform
    is supported at a = 0 only) and the remaining residues are summed without
    the large-arc check.
    """
    branch = Branch.parse(branch)
    q, rem = np.polynomial.polynomial.polydiv(f.numerator, f.denominator)
    rem_f = RationalOscIntegrand(tuple(rem) if np.any(rem) else (0.0,), f.denominator, f.osc_freq)
    total_up = 0j
    total_axis = 0j
    for p in find_poles(rem_f):
        if p.on_real_axis:
            if branch is Branch.PV:
                total_axis += residue_at(rem_f, p)
            elif branch.shift_sign * p.location.real > 0:
                total_up += residue_at(rem_f, p)
        elif p.location.imag > 0:
            total_up += residue_at(rem_f, p)
    return 2j * math.pi * total_up + 1j * math.pi * total_axis


def semicircle_contribution(f: RationalOscIntegrand, p: PoleSite, sense: str = "clockwise",
                            half: str = "upper", radius: float = None) -> complex:
    """Integral over a small semicircle centred on a real simple pole.

    In the r -> 0 limit an arc of angle pi contributes +i*pi*Res traversed
    counterclockwise and -i*pi*Res clockwise.  A left-to-right detour through
    the upper half is clockwise, through the lower half counterclockwise.
    With ``radius`` given the arc integral is evaluated numerically instead.
    """
    if sense not in ("clockwise", "counterclockwise"):
        raise ValueError("sense must be 'clockwise' or 'counterclockwise'")
    if half not in ("upper", "lower"):
        raise ValueError("half must be 'upper' or 'lower'")
    if not p.on_real_axis:
        raise NotAPole("semicircle contributions are for poles on the real axis")
    if p.multiplicity != 1:
        raise HigherOrderRealPole("semicircle limit needs a simple pole")
    if radius is None:
        res = residue_at(f, p)
        sign = 1 if sense == "counterclockwise" else -1
        return sign * 1j * math.pi * res
    # angles run over [0, pi] (upper) or [pi, 2pi] (lower); orientation from sense
    lo, hi = (0.0, math.pi) if half == "upper" else (math.pi, 2 * math.pi)
    if sense == "clockwise":
        lo, hi = hi, lo
    x, w = np.polynomial.legendre.leggauss(64)
    phi = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
    z = p.location.real + radius * np.exp(1j * phi)
    dz = 1j * radius * np.exp(1j * phi)
    return complex(0.5 * (hi - lo) * np.sum(w * f(z) * dz))


def arc_bound(f: RationalOscIntegrand, R: float) -> float:
    """ML-type bound on |integral over the upper arc of radius R|.

    Plain rational integrands: pi * R * max|num| / min|den|.  With
    osc_freq > 0, Jordan's lemma: pi * max|num/den| / osc_freq.
    """
    num_max = sum(abs(c) * R ** k for k, c in enumerate(f.numerator))
    den = f.denominator
    n = len(den) - 1
    den_min = abs(den[-1]) * R ** n - sum(abs(c) * R ** k for k, c in enumerate(den[:-1]))
    if den_min <= 0:
        return math.inf
    ratio = num_max / den_min
    if f.osc_freq > 0:
        return math.pi * ratio / f.osc_freq
    return math.pi * R * ratio
