import cmath
import math
from fractions import Fraction

import pytest

from ndimscatter.exact import (
    ExactValue,
    HalfInteger,
    NonInvertible,
    Pole,
    UnverifiableAtOddM,
    gamma_continued,
    gamma_duplication_check,
    gamma_half_integer,
    minus_one_power,
    pochhammer,
    pochhammer_reflect,
)

SQRT_PI = ExactValue.sqrt_pi()


def test_half_integer_roundtrip():
    for t in range(-9, 10):
        h = HalfInteger(t)
        assert HalfInteger.of(h.value) == h
        assert h.integral() == (t % 2 == 0)
    assert HalfInteger.of("-3/2") == HalfInteger(-3)
    assert HalfInteger.of(2.5) == HalfInteger(5)
    with pytest.raises(ValueError):
        HalfInteger.of(Fraction(1, 3))


def test_half_integer_arithmetic():
    a, b = HalfInteger(3), HalfInteger(-5)
    assert a + b == HalfInteger(-2)
    assert -a == HalfInteger(-3)
    assert a - b == HalfInteger(8)
    assert 1 - a == HalfInteger(-1)
    assert b < a


def test_exact_value_canonical_sign():
    v = ExactValue(Fraction(-3, 2), 1, 1, 2)
    assert v.coeff == Fraction(3, 2) and v.phase == 3
    z = ExactValue(Fraction(0), 3, 5, 7)
    assert (z.phase, z.pi_half_power, z.sym_power) == (0, 0, 0)
    assert z * v == ExactValue.zero()


def test_exact_value_to_complex():
    v = ExactValue(Fraction(2, 3), 1, 3, -2)
    expected = 2 / 3 * 1j * math.pi ** 1.5 * 0.5 ** -2
    assert cmath.isclose(v.to_complex(0.5), expected, rel_tol=1e-15)


def test_phase_algebra():
    i = ExactValue(Fraction(1), 1)
    assert i ** 4 == ExactValue.one()
    assert i * i == -ExactValue.one()
    assert minus_one_power(HalfInteger(1)) == i
    assert minus_one_power(HalfInteger(-1)) == -i


def test_like_term_addition():
    a = ExactValue(Fraction(1), 1, 2, -1)
    assert (a + a.reflect_symbol()).is_zero
    assert a + a == ExactValue(Fraction(2), 1, 2, -1)
    with pytest.raises(ValueError):
        a + ExactValue.one()


@pytest.mark.parametrize("h, expected", [
    (HalfInteger(1), SQRT_PI),
    (HalfInteger(-1), ExactValue(Fraction(-2), 0, 1)),
    (HalfInteger(3), ExactValue(Fraction(1, 2), 0, 1)),
    (HalfInteger(8), ExactValue(Fraction(6))),
])
def test_gamma_values(h, expected):
    assert gamma_half_integer(h) == expected


def test_gamma_poles():
    for n in range(0, -6, -1):
        assert gamma_half_integer(n) == Pole(1)


def test_gamma_against_math():
    for t in range(-11, 30, 2):
        assert math.isclose(gamma_half_integer(HalfInteger(t)).to_complex().real,
                            math.gamma(t / 2), rel_tol=1e-13)


def test_pochhammer_examples():
    assert pochhammer(1, HalfInteger(-1)) == SQRT_PI
    assert pochhammer(1, HalfInteger(1)) == ExactValue(Fraction(1, 2), 0, 1)
    for alpha in (HalfInteger(1), HalfInteger(-3), HalfInteger(8)):
        assert pochhammer(alpha, 0) == ExactValue.one()


def test_pochhammer_singular_cases():
    # finite / pole -> zero
    assert pochhammer(0, HalfInteger(1)).is_zero
    # pole / finite -> pole
    assert pochhammer(HalfInteger(1), HalfInteger(-1)) == Pole(1)
    # pole / pole: (-3)_2 = (-3)(-2) = 6
    assert pochhammer(-3, 2) == ExactValue(Fraction(6))
    assert pochhammer(-2, -1) == ExactValue(Fraction(-1, 3))


def test_pochhammer_reflect_examples():
    # 1/(1+k)_{1/2} at k=-1 rewrites to (-1)^(-1/2) (1)_(-1/2) = -i sqrt(pi)
    rewrite = pochhammer_reflect(1, HalfInteger(1))
    assert rewrite.inverse() == ExactValue(Fraction(1), 3, 1)
    assert pochhammer_reflect(HalfInteger(5), 0) == ExactValue.one()
    lhs = pochhammer(HalfInteger(1), 1)
    assert lhs == pochhammer_reflect(HalfInteger(1), 1) == ExactValue(Fraction(1, 2))


def test_pochhammer_reflect_integer_beta_matches_direct():
    for t in (1, 3, 5, -1, -3, 7):
        alpha = HalfInteger(t)
        for n in range(0, 5):
            direct = pochhammer(1 - alpha, n)
            assert direct == pochhammer_reflect(alpha, n)


def test_reflect_formal_continuation():
    # (1)_{-1} = Gamma(0)/Gamma(1) is a pole
    assert pochhammer_reflect(1, 1).is_zero
    formal = pochhammer_reflect(1, 1, formal=True)
    # (-1)^1 / (Gamma_c(0)/Gamma(1)) = -1/(i pi) = i/pi
    assert formal == ExactValue(Fraction(1), 1, -2)
    # (0)_{-1/2} = Gamma(-1/2)/Gamma(0) is an exact zero
    with pytest.raises(NonInvertible):
        pochhammer_reflect(0, HalfInteger(1))


def test_gamma_continued_matches_gamma_off_poles():
    for t in range(-7, 12, 2):
        assert gamma_continued(HalfInteger(t)) == gamma_half_integer(HalfInteger(t))
    # Gamma(0) -> pi (-1)^(1/2) / Gamma(1) = i pi
    assert gamma_continued(0) == ExactValue(Fraction(1), 1, 2)


def test_duplication():
    for m in range(0, 21, 2):
        assert gamma_duplication_check(m)
    with pytest.raises(UnverifiableAtOddM):
        gamma_duplication_check(3)
    with pytest.raises(ValueError):
        gamma_duplication_check(-2)
