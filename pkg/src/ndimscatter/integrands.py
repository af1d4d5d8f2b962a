"""Integrand descriptions shared by the three evaluators."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np

from .exact import HalfInteger

__all__ = ["Branch", "Integrand", "RationalOscIntegrand", "PoleSite"]


class Branch(enum.Enum):
    """Value assigned to an improper integral with real poles.

    OUTGOING shifts each real pole p to p + i*eps*sign(p) (sigma + i eps),
    INCOMING to p - i*eps*sign(p), PV is the mean of the two.
    """

    OUTGOING = "outgoing"
    INCOMING = "incoming"
    PV = "pv"

    @classmethod
    def parse(cls, text) -> "Branch":
        if isinstance(text, Branch):
            return text
        key = str(text).strip().lower()
        aliases = {"+": "outgoing", "-": "incoming", "out": "outgoing", "in": "incoming",
                   "principal": "pv", "principalvalue": "pv", "principal_value": "pv"}
        return cls(aliases.get(key, key))

    @property
    def shift_sign(self) -> int:
        if self is Branch.OUTGOING:
            return 1
        if self is Branch.INCOMING:
            return -1
        raise ValueError("PV has no pole shift")


@dataclass(frozen=True)
class Integrand:
    """x**x_power * (x**2 - sigma**2)**prop_power * exp(i*osc_freq*x)."""

    x_power: int
    prop_power: HalfInteger
    osc_freq: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "prop_power", HalfInteger.of(self.prop_power))
        if int(self.x_power) != self.x_power or self.x_power < 0:
            raise ValueError("x_power must be a non-negative integer")
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.osc_freq < 0:
            raise ValueError("osc_freq must be >= 0; use the INCOMING branch for a < 0")

    def to_rational(self) -> "RationalOscIntegrand":
        """Rational form; only defined for negative integer prop_power."""
        s = self.prop_power
        if not s.integral() or int(s) >= 0:
            raise ValueError(f"prop_power {s} has no rational-function form with poles")
        return RationalOscIntegrand.from_powers(self.x_power, -int(s), self.sigma, self.osc_freq)


@dataclass(frozen=True)
class PoleSite:
    location: complex
    multiplicity: int
    on_real_axis: bool


def _trim(coeffs) -> tuple:
    c = [float(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0.0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class RationalOscIntegrand:
    """num(z)/den(z) * exp(i*osc_freq*z), coefficients in ascending order."""

    numerator: tuple
    denominator: tuple
    osc_freq: float = 0.0

    def __post_init__(self):
        num = _trim(self.numerator)
        den = _trim(self.denominator)
        if not any(den):
            raise ValueError("denominator is identically zero")
        if self.osc_freq < 0:
            raise ValueError("osc_freq must be >= 0")
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        object.__setattr__(self, "osc_freq", float(self.osc_freq))

    @classmethod
    def from_powers(cls, r: int, n: int, sigma: float, a: float = 0.0) -> "RationalOscIntegrand":
        """x**r * exp(iax) / (x**2 - sigma**2)**n."""
        num = [0.0] * r + [1.0]
        # (x^2 - s^2)^n = sum_j C(n,j) x^(2j) (-s^2)^(n-j)
        den = [0.0] * (2 * n + 1)
        for j in range(n + 1):
            den[2 * j] = comb(n, j) * float(Fraction(-1) ** (n - j)) * sigma ** (2 * (n - j))
        return cls(tuple(num), tuple(den), a)

    @property
    def num_degree(self) -> int:
        return len(self.numerator) - 1 if any(self.numerator) else -1

    @property
    def den_degree(self) -> int:
        return len(self.denominator) - 1

    def arc_vanishes(self) -> bool:
        gap = self.den_degree - self.num_degree
        if self.osc_freq > 0:
            return gap >= 1
        return gap >= 2

    def __call__(self, z):
        z = np.asarray(z)
        num = np.polynomial.polynomial.polyval(z, self.numerator)
        den = np.polynomial.polynomial.polyval(z, self.denominator)
        return num / den * np.exp(1j * self.osc_freq * z)
