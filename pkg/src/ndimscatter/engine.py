"""Negative-dimension evaluation of x**r (x**2 - sigma**2)**s integrals.

Polynomial integrands (s >= 0) get their value from matching the series of a
Gaussian generating integral term by term; negative s is reached by
analytic continuation of the Pochhammer symbol that carries s.  The
oscillatory integrals are resummed from the continued moments.

The OUTGOING value is what the continuation produces directly; INCOMING is
its image under sigma -> -sigma, and PV is the mean of the two.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .exact import (
    ExactValue,
    HalfInteger,
    Pole,
    gamma_half_integer,
    minus_one_power,
    pochhammer,
    pochhammer_reflect,
)
from .integrands import Branch

__all__ = [
    "PoleInCoefficient",
    "SeriesMatch",
    "match_single_series",
    "match_double_series",
    "ndim_power_integral",
    "ndim_ac",
    "ndim_rs",
    "ndim_rs_ac",
    "moment_integral",
    "exponential_integral",
    "x_exponential_integral",
    "trig_integrals",
    "scattering_integral",
    "CLOSED",
]

K_MAX = 25
SERIES_CHECK_LIMIT = 30.0
CLOSED = "closed"


class PoleInCoefficient(ArithmeticError):
    pass


def _branch_value(outgoing: ExactValue, branch: Branch) -> ExactValue:
    branch = Branch.parse(branch)
    if branch is Branch.OUTGOING:
        return outgoing
    incoming = outgoing.reflect_symbol()
    if branch is Branch.INCOMING:
        return incoming
    return (outgoing + incoming) * Fraction(1, 2)


def _factorial(h) -> ExactValue:
    g = gamma_half_integer(HalfInteger.of(h) + 1)
    if isinstance(g, Pole):
        raise PoleInCoefficient(f"({h})! is singular")
    return g


# --------------------------------------------------------------------------
# series matching


@dataclass(frozen=True)
class Relation:
    """target = sum(coeff * source) + const."""

    target: str
    terms: tuple
    const: Fraction = Fraction(0)

    def __call__(self, indices: dict) -> HalfInteger:
        total = Fraction(self.const)
        for name, c in self.terms:
            total += Fraction(c) * HalfInteger.of(indices[name]).value
        return HalfInteger.of(total)

    def __str__(self):
        rhs = " + ".join(f"{c}*{n}" if c != 1 else n for n, c in self.terms)
        if self.const:
            rhs = f"{rhs} + {self.const}" if rhs else str(self.const)
        return f"{self.target} = {rhs}"


@dataclass
class SeriesMatch:
    """Index relations from term-by-term matching of two series.

    ``relations`` express the lhs (integral-side) indices through the rhs
    (generating-function side) ones, ``inverse`` the other way round.
    ``lhs_indices``/``rhs_indices`` record every index tuple whose
    coefficient identity was checked.
    """

    lhs_names: tuple
    rhs_names: tuple
    relations: tuple
    inverse: tuple
    lhs_indices: list = field(default_factory=list)
    rhs_indices: list = field(default_factory=list)

    def solve(self, **rhs) -> dict:
        return {rel.target: rel(rhs) for rel in self.relations}

    def invert(self, **lhs) -> dict:
        return {rel.target: rel(lhs) for rel in self.inverse}

    @property
    def n_verified(self) -> int:
        return len(self.lhs_indices)


def single_series_identity(k: int) -> tuple:
    """Both sides of (-1)^k I(k)/k! = sqrt(pi) a^(2n)/n! at n = k + 1/2."""
    n = HalfInteger(2 * k + 1)
    lhs = minus_one_power(k) * ndim_power_integral(k) / _factorial(k)
    rhs = ExactValue.sqrt_pi() * ExactValue.symbol(n.twice_value) / _factorial(n)
    return lhs, rhs


def match_single_series(k_max: int = K_MAX) -> SeriesMatch:
    match = SeriesMatch(
        lhs_names=("k",),
        rhs_names=("n",),
        relations=(Relation("n", (("k", 1),), Fraction(1, 2)),),
        inverse=(Relation("k", (("n", 1),), Fraction(-1, 2)),),
    )
    for k in range(k_max + 1):
        lhs, rhs = single_series_identity(k)
        if lhs != rhs:
            raise ArithmeticError(f"single-series identity fails at k={k}: {lhs} != {rhs}")
        match.lhs_indices.append((("k", HalfInteger.of(k)),))
        match.rhs_indices.append((("n", match.solve(k=k)["n"]),))
    return match


def double_series_identity(l: int, k: int) -> tuple:
    """Both sides of (-1)^s I(r,s)/(r! s!) = sqrt(pi) sigma^(2k)/(4^l k! l!).

    The integral side is indexed by r = 2l and s = k - l - 1/2.
    """
    r = 2 * l
    s = HalfInteger(2 * k - 2 * l - 1)
    lhs = minus_one_power(s) * ndim_rs(r, s) / (_factorial(r) * _factorial(s))
    rhs = (
        ExactValue.sqrt_pi()
        * ExactValue.symbol(2 * k)
        / (ExactValue(Fraction(4) ** l) * _factorial(k) * _factorial(l))
    )
    return lhs, rhs


def match_double_series(r_max: int = 10, k_max: int = 10) -> SeriesMatch:
    """Relations r = 2l, s = k - l - 1/2 and their coefficient identity.

    Checked on every lattice point with r <= r_max and
    s + r/2 + 1/2 = k <= k_max.
    """
    match = SeriesMatch(
        lhs_names=("r", "s"),
        rhs_names=("l", "k"),
        relations=(
            Relation("r", (("l", 2),)),
            Relation("s", (("k", 1), ("l", -1)), Fraction(-1, 2)),
        ),
        inverse=(
            Relation("k", (("s", 1), ("r", Fraction(1, 2))), Fraction(1, 2)),
            Relation("l", (("r", Fraction(1, 2)),)),
        ),
    )
    for l in range(r_max // 2 + 1):
        for k in range(k_max + 1):
            lhs, rhs = double_series_identity(l, k)
            if lhs != rhs:
                raise ArithmeticError(f"double-series identity fails at l={l}, k={k}")
            sol = match.solve(l=l, k=k)
            match.lhs_indices.append((("r", sol["r"]), ("s", sol["s"])))
            match.rhs_indices.append((("l", HalfInteger.of(l)), ("k", HalfInteger.of(k))))
    return match


# --------------------------------------------------------------------------
# closed-form negative-dimension integrals


def ndim_power_integral(k: int) -> ExactValue:
    """(-1)^(-k) sqrt(pi) a^(2k+1) / (1+k)_(1/2), for k >= 0."""
    if k < 0:
        raise ValueError("k < 0 needs the continued form, see ndim_ac")
    poch = pochhammer(1 + k, HalfInteger(1))
    return minus_one_power(-k) * ExactValue.sqrt_pi() * ExactValue.symbol(2 * k + 1) / poch


def ndim_ac(k: int, branch: Branch = Branch.OUTGOING) -> ExactValue:
    """Continued value of the integral of (x^2 - a^2)^k for k <= -1.

    The factor 1/(1+k)_(1/2) is rewritten with the reflection rule into
    (-1)^(-1/2) (-k)_(-1/2), which is finite for negative k.
    """
    if k >= 0:
        raise ValueError("k >= 0 is not continued; use ndim_power_integral")
    alpha, beta = HalfInteger.of(-k), HalfInteger(1)
    outgoing = (
        minus_one_power(-k)
        * ExactValue.sqrt_pi()
        * ExactValue.symbol(2 * k + 1)
        * pochhammer_reflect(alpha, beta).inverse()
    )
    return _branch_value(outgoing, branch)


def ndim_rs(r: int, s) -> ExactValue:
    """Integral of x^r (x^2 - sigma^2)^s from series matching (not continued)."""
    if r < 0:
        raise ValueError("r must be non-negative")
    s = HalfInteger.of(s)
    beta = HalfInteger(r + 1)
    denom = pochhammer(1 + s, beta)
    if isinstance(denom, ExactValue) and denom.is_zero:
        raise PoleInCoefficient(f"(1+{s})_{{{beta}}} vanishes")
    top = pochhammer(HalfInteger(r + 2), HalfInteger(r))
    prefactor = (
        minus_one_power(-s)
        * ExactValue.sqrt_pi()
        * ExactValue.symbol(r + 1 + s.twice_value)
        / ExactValue(Fraction(2) ** r)
        * top
    )
    if isinstance(denom, Pole):
        return ExactValue.zero()
    return prefactor / denom


def ndim_rs_ac(r: int, s: int, branch: Branch = Branch.OUTGOING) -> ExactValue:
    """Continuation of :func:`ndim_rs` to negative integer s.

    1/(1+s)_(r/2+1/2) becomes (-1)^(-r/2-1/2) (-s)_(-r/2-1/2); for odd r the
    latter meets a gamma pole, which is continued by reflection.
    """
    if r < 0:
        raise ValueError("r must be non-negative")
    s = HalfInteger.of(s)
    if not s.integral() or int(s) > -1:
        raise ValueError("ndim_rs_ac needs a negative integer s")
    beta = HalfInteger(r + 1)
    continued = pochhammer_reflect(-s, beta, formal=True).inverse()
    top = pochhammer(HalfInteger(r + 2), HalfInteger(r))
    outgoing = (
        minus_one_power(-s)
        * ExactValue.sqrt_pi()
        * ExactValue.symbol(r + 1 + s.twice_value)
        / ExactValue(Fraction(2) ** r)
        * top
        * continued
    )
    return _branch_value(outgoing, branch)


def _moment_closed_form(m: int) -> ExactValue:
    return ExactValue(Fraction(1), 1, 2, m - 1)


@functools.lru_cache(maxsize=None)
def moment_integral(m: int, branch: Branch = Branch.OUTGOING) -> ExactValue:
    """I^m(sigma) = integral of x^m/(x^2 - sigma^2); i*pi*sigma^(m-1) outgoing."""
    if m < 0:
        raise ValueError("m must be non-negative")
    outgoing = ndim_rs_ac(m, -1, Branch.OUTGOING)
    if outgoing != _moment_closed_form(m):
        raise ArithmeticError(f"moment {m}: continued value {outgoing} is not i*pi*sigma^{m - 1}")
    return _branch_value(outgoing, branch)


def _moment_complex(m: int, branch: Branch, sigma: float) -> complex:
    return moment_integral(m, Branch.parse(branch)).to_complex(sigma)


# --------------------------------------------------------------------------
# resummed oscillatory integrals


def _check_positive(a: float, sigma: float):
    if not a > 0:
        raise ValueError("a must be positive (a <= 0 is not supported)")
    if not sigma > 0:
        raise ValueError("sigma must be positive")


def _signed_sigma(sigma: float, branch: Branch) -> float:
    return -sigma if branch is Branch.INCOMING else sigma


def _exp_closed(a: float, s: float) -> complex:
    # i*pi*exp(i a s)/s written out in real arithmetic so that s -> -s is exact
    return complex(-math.pi * math.sin(a * s) / s, math.pi * math.cos(a * s) / s)


def _xexp_closed(a: float, s: float) -> complex:
    # -i d/da [i*pi*exp(i a s)/s] = i*pi*exp(i a s)
    return complex(-math.pi * math.sin(a * s), math.pi * math.cos(a * s))


def _mean(u: complex, v: complex) -> complex:
    return complex((u.real + v.real) / 2, (u.imag + v.imag) / 2)


def _by_branch(func, a: float, sigma: float, branch: Branch) -> complex:
    branch = Branch.parse(branch)
    if branch is Branch.PV:
        return _mean(func(a, sigma), func(a, -sigma))
    return func(a, _signed_sigma(sigma, branch))


def exponential_series_terms(a: float, sigma: float, branch: Branch, n_terms: int) -> list:
    """Terms (ia)^m/m! * I^m(sigma), m = 0..n_terms, with exact moments."""
    branch = Branch.parse(branch)
    return [(1j * a) ** m / math.factorial(m) * _moment_complex(m, branch, sigma)
            for m in range(n_terms + 1)]


def exponential_integral(a: float, sigma: float, branch: Branch = Branch.OUTGOING,
                         n_terms: Union[int, str] = CLOSED) -> complex:
    """Integral of exp(iax)/(x^2 - sigma^2).

    ``n_terms=CLOSED`` returns the resummed closed form; an integer N returns
    the partial sum of the moment series through order N (ascending order).
    """
    _check_positive(a, sigma)
    branch = Branch.parse(branch)
    if n_terms == CLOSED:
        return _by_branch(_exp_closed, a, sigma, branch)
    if int(n_terms) < 0:
        raise ValueError("n_terms must be >= 0")
    total = 0j
    for t in exponential_series_terms(a, sigma, branch, int(n_terms)):
        total += t
    return total


def x_exponential_integral(a: float, sigma: float, branch: Branch = Branch.OUTGOING,
                           check_series: bool = True, rtol: float = 1e-12) -> complex:
    """Integral of x exp(iax)/(x^2 - sigma^2), via x e^{iax} = -i d/da e^{iax}.

    The derivative is taken on the closed form.  For a*sigma <= 30 the
    term-wise derivative of the moment series is summed as well and must agree
    to ``rtol`` relative to the sum of the term magnitudes.
    """
    _check_positive(a, sigma)
    branch = Branch.parse(branch)
    closed = _by_branch(_xexp_closed, a, sigma, branch)
    if check_series and a * sigma <= SERIES_CHECK_LIMIT:
        n_terms = int(3 * a * sigma) + 40
        series = 0j
        scale = 0.0
        for m in range(1, n_terms + 1):
            # -i d/da (ia)^m/m! = (ia)^(m-1)/(m-1)!
            t = (1j * a) ** (m - 1) / math.factorial(m - 1) * _moment_complex(m, branch, sigma)
            series += t
            scale += abs(t)
        if abs(series - closed) > rtol * max(scale, 1.0):
            raise ArithmeticError(
                f"series and closed form disagree for a={a}, sigma={sigma}: {series} vs {closed}")
    return closed


def trig_integrals(a: float, sigma: float, branch: Branch = Branch.OUTGOING) -> tuple:
    """(x cos(ax), x sin(ax)) integrals over (x^2 - sigma^2), in the branch reading.

    The cosine part is odd and vanishes; the sine part is E_x / i.
    """
    ex = x_exponential_integral(a, sigma, branch, check_series=False)
    return 0j, complex(ex.imag, -ex.real)


def scattering_integral(sigma: float, branch: Branch = Branch.OUTGOING) -> complex:
    """S(sigma) = integral of x sin x/(x^2 - sigma^2): pi e^{+-i sigma}, or pi cos(sigma) for PV."""
    return trig_integrals(1.0, sigma, branch)[1]


def exact_form(r: int, s, branch: Branch, symbol: str = "σ") -> str:
    s = HalfInteger.of(s)
    if s.integral() and int(s) <= -1:
        return ndim_rs_ac(r, int(s), branch).format(symbol)
    return ndim_rs(r, s).format(symbol)
