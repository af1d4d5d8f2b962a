"""Root isolation for denominators, shared by both reference evaluators."""
from __future__ import annotations

import cmath
import math

import numpy as np

from .integrands import Branch, PoleSite, RationalOscIntegrand

__all__ = ["DegreeTooHigh", "find_poles", "shifted_poles", "REAL_AXIS_TOL"]

MAX_DEGREE = 8
REAL_AXIS_TOL = 1e-12
_CLUSTER_TOL = 1e-5


class DegreeTooHigh(ValueError):
    pass


def _is_real(z: complex) -> bool:
    return abs(z.imag) <= REAL_AXIS_TOL * (1.0 + abs(z.real))


def _polish(coeffs, z: complex, order: int) -> complex:
    # Newton on the (order-1)-th derivative, where a root of multiplicity
    # `order` is simple.
    p = np.polynomial.Polynomial(coeffs).deriv(order - 1)
    dp = p.deriv()
    for _ in range(8):
        d = dp(z)
        if d == 0:
            break
        step = p(z) / d
        z = z - step
        if abs(step) <= 1e-16 * (1 + abs(z)):
            break
    return complex(z)


def _quadratic_roots(c0, c1, c2):
    disc = c1 * c1 - 4 * c2 * c0
    if disc == 0:
        return [(complex(-c1 / (2 * c2)), 2)]
    sq = cmath.sqrt(disc)
    # numerically stable pair
    q = -0.5 * (c1 + (sq if c1 >= 0 else -sq))
    if q == 0:
        return [(complex(0.0), 2)]
    return [(complex(q / c2), 1), (complex(c0 / q), 1)]


def find_poles(f: RationalOscIntegrand) -> list:
    """Roots of the denominator with multiplicities, sorted by (Re, Im)."""
    den = f.denominator
    deg = len(den) - 1
    if deg > MAX_DEGREE:
        raise DegreeTooHigh(f"denominator degree {deg} exceeds {MAX_DEGREE}")
    if deg == 0:
        return []
    if deg == 1:
        found = [(complex(-den[0] / den[1]), 1)]
    elif deg == 2:
        found = _quadratic_roots(*den)
    else:
        roots = np.roots(den[::-1])
        clusters = []
        for z in roots:
            for cl in clusters:
                centre = sum(cl) / len(cl)
                if abs(z - centre) <= _CLUSTER_TOL * (1 + abs(centre)):
                    cl.append(z)
                    break
            else:
                clusters.append([z])
        found = []
        for cl in clusters:
            m = len(cl)
            found.append((_polish(den, complex(sum(cl) / m), m), m))
    sites = []
    for z, m in found:
        real = _is_real(z)
        if real:
            z = complex(z.real, 0.0)
        sites.append(PoleSite(z, m, real))
    sites.sort(key=lambda p: (p.location.real, p.location.imag))
    return sites


def shifted_poles(f: RationalOscIntegrand, shift, epsilon: float) -> list:
    """Pole list with each real pole p moved to p + sign*i*eps*sign(p)."""
    sgn = Branch.parse(shift).shift_sign
    out = []
    for p in find_poles(f):
        z = p.location
        if p.on_real_axis:
            if z.real == 0:
                raise ValueError("a real pole at the origin has no outgoing/incoming direction")
            z = complex(z.real, sgn * epsilon * math.copysign(1.0, z.real))
        out.append((z, p.multiplicity))
    return out
