"""Exact arithmetic for half-integer gamma values and Pochhammer symbols.

Every value produced by the negative-dimension algebra is a single monomial

    coeff * i**phase * pi**(pi_half_power/2) * x**sym_power

with a rational ``coeff`` and a free symbol ``x`` (``a`` or ``sigma``).
Poles of the gamma function are values (:class:`Pole`), not exceptions, so
ratios with cancelling singularities can still be formed.

Powers of -1 with half-integer exponent use the principal branch,
(-1)**(1/2) = i and (-1)**(-1/2) = -i.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

__all__ = [
    "HalfInteger",
    "ExactValue",
    "Pole",
    "GammaValue",
    "NonInvertible",
    "UnverifiableAtOddM",
    "half",
    "minus_one_power",
    "gamma_half_integer",
    "gamma_continued",
    "pochhammer",
    "pochhammer_reflect",
    "gamma_duplication_check",
]


class NonInvertible(ArithmeticError):
    """A formal rewrite would need the inverse of an exact zero."""


class UnverifiableAtOddM(ValueError):
    """The duplication relation is only an exact identity for even m."""


@functools.total_ordering
@dataclass(frozen=True)
class HalfInteger:
    """Exact element of (1/2)Z stored as twice its value."""

    twice_value: int

    def __post_init__(self):
        if not isinstance(self.twice_value, int) or isinstance(self.twice_value, bool):
            raise TypeError("twice_value must be an int")

    @classmethod
    def of(cls, x) -> "HalfInteger":
        if isinstance(x, HalfInteger):
            return x
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, float):
            if not (2 * x).is_integer():
                raise ValueError(f"{x!r} is not a half-integer")
            return cls(int(2 * x))
        q = Fraction(x)
        if (2 * q).denominator != 1:
            raise ValueError(f"{x!r} is not a half-integer")
        return cls(int(2 * q))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def integral(self) -> bool:
        return self.twice_value % 2 == 0

    def __int__(self):
        if not self.integral():
            raise ValueError(f"{self} is not an integer")
        return self.twice_value // 2

    def __add__(self, other):
        other = _as_half(other)
        if other is NotImplemented:
            return other
        return HalfInteger(self.twice_value + other.twice_value)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_half(other)
        if other is NotImplemented:
            return other
        return HalfInteger(self.twice_value - other.twice_value)

    def __rsub__(self, other):
        other = _as_half(other)
        if other is NotImplemented:
            return other
        return HalfInteger(other.twice_value - self.twice_value)

    def __neg__(self):
        return HalfInteger(-self.twice_value)

    def __eq__(self, other):
        other = _as_half(other)
        if other is NotImplemented:
            return False
        return self.twice_value == other.twice_value

    def __lt__(self, other):
        other = _as_half(other)
        if other is NotImplemented:
            return other
        return self.twice_value < other.twice_value

    def __hash__(self):
        return hash(("HalfInteger", self.twice_value))

    def __repr__(self):
        return f"HalfInteger({self})"

    def __str__(self):
        if self.integral():
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def _as_half(x):
    if isinstance(x, HalfInteger):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        try:
            return HalfInteger.of(x)
        except ValueError:
            return NotImplemented
    return NotImplemented


def half(x) -> HalfInteger:
    """Shorthand for :meth:`HalfInteger.of`, e.g. ``half('-3/2')`` or ``half(2)``."""
    return HalfInteger.of(x)


_PHASE_UNITS = (complex(1, 0), complex(0, 1), complex(-1, 0), complex(0, -1))
_PHASE_TEXT = ("", "i", "-", "-i")


@dataclass(frozen=True)
class ExactValue:
    """Monomial ``coeff * i**phase * pi**(pi_half_power/2) * x**sym_power``.

    The canonical form keeps ``coeff >= 0`` with the sign folded into
    ``phase`` (mod 4); zero has every other field set to 0.  Structural
    equality is therefore value equality.
    """

    coeff: Fraction
    phase: int = 0
    pi_half_power: int = 0
    sym_power: int = 0

    def __post_init__(self):
        c = Fraction(self.coeff)
        phase = int(self.phase) % 4
        if c < 0:
            c = -c
            phase = (phase + 2) % 4
        if c == 0:
            phase = 0
            object.__setattr__(self, "pi_half_power", 0)
            object.__setattr__(self, "sym_power", 0)
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "phase", phase)

    @classmethod
    def zero(cls) -> "ExactValue":
        return cls(Fraction(0))

    @classmethod
    def one(cls) -> "ExactValue":
        return cls(Fraction(1))

    @classmethod
    def sqrt_pi(cls) -> "ExactValue":
        return cls(Fraction(1), 0, 1, 0)

    @classmethod
    def symbol(cls, power: int = 1) -> "ExactValue":
        return cls(Fraction(1), 0, 0, power)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactValue(Fraction(other))
        if not isinstance(other, ExactValue):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return ExactValue.zero()
        return ExactValue(
            self.coeff * other.coeff,
            self.phase + other.phase,
            self.pi_half_power + other.pi_half_power,
            self.sym_power + other.sym_power,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ExactValue":
        if self.is_zero:
            raise ZeroDivisionError("inverse of exact zero")
        return ExactValue(1 / self.coeff, -self.phase, -self.pi_half_power, -self.sym_power)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactValue(Fraction(other))
        if not isinstance(other, ExactValue):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactValue(Fraction(other)) * self.inverse()
        return NotImplemented

    def __neg__(self):
        return ExactValue(self.coeff, self.phase + 2, self.pi_half_power, self.sym_power)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactValue.one()
        for _ in range(n):
            out = out * self
        return out

    def _like(self, other: "ExactValue") -> bool:
        return (self.pi_half_power, self.sym_power) == (other.pi_half_power, other.sym_power)

    def __add__(self, other):
        if not isinstance(other, ExactValue):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if not self._like(other) or (self.phase - other.phase) % 2:
            raise ValueError(f"{self} + {other} is not a monomial")
        if self.phase == other.phase:
            c = self.coeff + other.coeff
        else:
            c = self.coeff - other.coeff
        return ExactValue(c, self.phase, self.pi_half_power, self.sym_power)

    def __sub__(self, other):
        if not isinstance(other, ExactValue):
            return NotImplemented
        return self + (-other)

    def reflect_symbol(self) -> "ExactValue":
        """Substitute x -> -x."""
        if self.sym_power % 2:
            return -self
        return self

    def to_complex(self, symbol_value: float = 1.0) -> complex:
        if self.is_zero:
            return complex(0.0, 0.0)
        mag = float(self.coeff)
        if self.pi_half_power:
            mag *= math.pi ** (self.pi_half_power / 2)
        if self.sym_power:
            mag *= float(symbol_value) ** self.sym_power
        unit = _PHASE_UNITS[self.phase]
        return complex(unit.real * mag, unit.imag * mag)

    def format(self, symbol: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        if self.coeff != 1 or (self.pi_half_power == 0 and self.sym_power == 0):
            parts.append(str(self.coeff) if self.coeff.denominator == 1 else f"({self.coeff})")
        if self.pi_half_power:
            h = self.pi_half_power
            if h == 2:
                parts.append("π")
            elif h % 2 == 0:
                parts.append(f"π^{h // 2}")
            else:
                parts.append(f"π^({h}/2)")
        if self.sym_power:
            parts.append(symbol if self.sym_power == 1 else f"{symbol}^{self.sym_power}")
        body = "·".join(parts)
        prefix = _PHASE_TEXT[self.phase]
        return f"{prefix}{body}"

    def __str__(self):
        return self.format()


@dataclass(frozen=True)
class Pole:
    """Gamma function pole of the given order."""

    order: int = 1


GammaValue = Union[ExactValue, Pole]


def minus_one_power(h) -> ExactValue:
    """(-1)**h on the principal branch, i.e. i**(2h)."""
    h = HalfInteger.of(h)
    return ExactValue(Fraction(1), h.twice_value % 4)


@functools.lru_cache(maxsize=None)
def _gamma_cached(twice: int) -> GammaValue:
    if twice % 2 == 0:
        n = twice // 2
        if n <= 0:
            return Pole(1)
        return ExactValue(Fraction(math.factorial(n - 1)))
    # Gamma(1/2) = sqrt(pi); walk the recurrence Gamma(x+1) = x Gamma(x).
    c = Fraction(1)
    x = Fraction(1, 2)
    target = Fraction(twice, 2)
    while x < target:
        c *= x
        x += 1
    while x > target:
        x -= 1
        c /= x
    return ExactValue(c, 0, 1, 0)


def gamma_half_integer(h) -> GammaValue:
    """Gamma at a half-integer argument, exact; :class:`Pole` at 0, -1, -2, ..."""
    return _gamma_cached(HalfInteger.of(h).twice_value)


def gamma_continued(h) -> ExactValue:
    """Gamma with its poles replaced by the reflection continuation.

    At a non-positive integer z the finite rule
    ``Gamma(z) -> pi * (-1)**(1/2 - z) / Gamma(1 - z)`` is used, i.e. the
    divergent ``1/sin(pi z)`` of the reflection formula is traded for the
    principal-branch power of -1.  Away from the poles this is Gamma itself.
    """
    h = HalfInteger.of(h)
    g = gamma_half_integer(h)
    if isinstance(g, ExactValue):
        return g
    pi = ExactValue(Fraction(1), 0, 2, 0)
    partner = gamma_half_integer(1 - h)
    return pi * minus_one_power(HalfInteger(1) - h) / partner


def pochhammer(alpha, beta) -> Union[ExactValue, Pole]:
    """(alpha)_beta = Gamma(alpha+beta)/Gamma(alpha).

    Returns an exact zero when only the denominator is singular, a
    :class:`Pole` when only the numerator is, and the finite limit of the
    ratio when both are.
    """
    alpha = HalfInteger.of(alpha)
    beta = HalfInteger.of(beta)
    top = gamma_half_integer(alpha + beta)
    bottom = gamma_half_integer(alpha)
    if isinstance(top, ExactValue) and isinstance(bottom, ExactValue):
        return top / bottom
    if isinstance(top, ExactValue):
        return ExactValue.zero()
    if isinstance(bottom, ExactValue):
        return Pole(1)
    # both alpha and alpha+beta are non-positive integers, so beta is integral
    num = gamma_half_integer(1 - alpha)
    den = gamma_half_integer(1 - alpha - beta)
    return minus_one_power(beta) * num / den


def pochhammer_reflect(alpha, beta, formal: bool = False) -> ExactValue:
    """Right-hand side of ``(1-alpha)_beta = (-1)**beta / (alpha)_{-beta}``.

    This is a rewrite rule, not a pointwise identity for half-integer beta.
    With ``formal=True`` a pole in ``(alpha)_{-beta}`` is continued through
    :func:`gamma_continued` instead of collapsing the result to zero.
    """
    alpha = HalfInteger.of(alpha)
    beta = HalfInteger.of(beta)
    inner = pochhammer(alpha, -beta)
    if isinstance(inner, Pole):
        if not formal:
            return ExactValue.zero()
        bottom = gamma_half_integer(alpha)
        if isinstance(bottom, Pole):
            raise NonInvertible(f"({alpha})_{{{-beta}}} has no formal continuation")
        inner = gamma_continued(alpha - beta) / bottom
    if inner.is_zero:
        raise NonInvertible(f"({alpha})_{{{-beta}}} is zero")
    return minus_one_power(beta) / inner


def gamma_duplication_check(m: int) -> bool:
    """Check Gamma(1/2 - m/2) == sqrt(pi) (-4)**(m/2) Gamma(1+m/2)/Gamma(1+m) exactly."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m % 2:
        raise UnverifiableAtOddM(f"m={m} is odd; the left side is a pole")
    lhs = gamma_half_integer(HalfInteger(1 - m))
    rhs = (
        ExactValue.sqrt_pi()
        * ExactValue(Fraction(-4) ** (m // 2))
        * gamma_half_integer(1 + m // 2)
        / gamma_half_integer(1 + m)
    )
    return lhs == rhs
