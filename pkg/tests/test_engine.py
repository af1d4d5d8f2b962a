import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from ndimscatter import engine, residue
from ndimscatter.engine import (
    match_double_series,
    match_single_series,
    moment_integral,
    ndim_ac,
    ndim_power_integral,
    ndim_rs,
    ndim_rs_ac,
)
from ndimscatter.exact import ExactValue, HalfInteger
from ndimscatter.integrands import Branch, RationalOscIntegrand

OUT, IN, PV = Branch.OUTGOING, Branch.INCOMING, Branch.PV


def ev(coeff, phase=0, pi_half=0, sym=0):
    return ExactValue(Fraction(coeff), phase, pi_half, sym)


# -- series matching -------------------------------------------------------

def test_single_series_relation():
    m = match_single_series()
    assert m.solve(k=0)["n"] == HalfInteger(1)
    assert m.solve(k=3)["n"] == HalfInteger(7)
    assert m.invert(n=HalfInteger(7))["k"] == HalfInteger(6)
    assert m.n_verified == 26


def test_single_series_identity_k2():
    lhs, rhs = engine.single_series_identity(2)
    assert lhs == rhs


def test_double_series_relations():
    m = match_double_series()
    assert m.solve(l=0, k=0) == {"r": HalfInteger(0), "s": HalfInteger(-1)}
    assert m.solve(l=1, k=2) == {"r": HalfInteger(4), "s": HalfInteger(1)}
    back = m.invert(r=HalfInteger(4), s=HalfInteger(1))
    assert back == {"k": HalfInteger(4), "l": HalfInteger(2)}
    for (_, r), (_, s) in m.lhs_indices:
        assert r <= HalfInteger(20)
        assert s + HalfInteger(r.twice_value // 2) + HalfInteger(1) <= HalfInteger(20)
    assert m.n_verified == 66


# -- closed-form integrals -------------------------------------------------

@pytest.mark.parametrize("k, expected", [
    (0, ev(2, sym=1)),
    (1, ev(Fraction(-4, 3), sym=3)),
    (2, ev(Fraction(16, 15), sym=5)),
])
def test_power_integral(k, expected):
    assert ndim_power_integral(k) == expected


def test_power_integral_rejects_negative():
    with pytest.raises(ValueError):
        ndim_power_integral(-1)
    with pytest.raises(ValueError):
        ndim_ac(0)


def test_ndim_ac_values():
    assert ndim_ac(-1, OUT) == ev(1, 1, 2, -1)
    assert ndim_ac(-1, IN) == ev(1, 3, 2, -1)
    assert ndim_ac(-1, PV).is_zero
    assert ndim_ac(-2, OUT) == ev(Fraction(1, 2), 3, 2, -3)
    assert ndim_ac(-3, OUT) == ev(Fraction(3, 8), 1, 2, -5)


def test_ndim_rs_examples():
    assert ndim_rs(0, 1) == ndim_power_integral(1)
    assert ndim_rs(0, 0) == ev(2, sym=1)
    assert ndim_rs(2, 0) == ev(Fraction(2, 3), sym=3)


def test_ndim_rs_matches_power_integral():
    for s in range(0, 11):
        assert ndim_rs(0, s) == ndim_power_integral(s)


def test_ndim_rs_ac_examples():
    assert ndim_rs_ac(0, -1, OUT) == ndim_ac(-1, OUT)
    assert ndim_rs_ac(1, -1, OUT) == ev(1, 1, 2, 0)
    assert ndim_rs_ac(2, -1, OUT) == ev(1, 1, 2, 1)


def test_moments():
    assert moment_integral(0, OUT) == ev(1, 1, 2, -1)
    assert moment_integral(0, IN) == ev(1, 3, 2, -1)
    assert moment_integral(5, OUT) == ev(1, 1, 2, 4)
    for m in range(0, 30):
        assert moment_integral(m, OUT) == ev(1, 1, 2, m - 1)


# -- oscillatory closed forms ----------------------------------------------

def test_exponential_examples():
    # i pi e^{2i}/2; this is the residue-oracle value at a=1, sigma=2
    z = engine.exponential_integral(1.0, 2.0, OUT)
    assert cmath.isclose(z, 1j * math.pi * cmath.exp(2j) / 2, rel_tol=1e-15)
    ref = residue.shifted_value(RationalOscIntegrand.from_powers(0, 1, 2.0, 1.0), OUT)
    assert cmath.isclose(z, ref, rel_tol=1e-14)
    assert cmath.isclose(z, complex(-1.42832106, -0.65368192), rel_tol=1e-8)
    pv = engine.exponential_integral(1.0, 1.0, PV)
    assert pv.imag == 0.0
    assert math.isclose(pv.real, -math.pi * math.sin(1.0), rel_tol=1e-15)


@pytest.mark.parametrize("a, sigma", [(1.0, 1.0), (0.5, 2.0), (2.5, 2.0), (1.0, 5.0)])
def test_exponential_series_matches_closed(a, sigma):
    closed = engine.exponential_integral(a, sigma, OUT)
    series = engine.exponential_integral(a, sigma, OUT, n_terms=40)
    assert abs(series - closed) <= 1e-12 * abs(closed)


@pytest.mark.parametrize("a, sigma", [(1.0, 1.0), (0.5, 2.0), (2.0, 1.0), (1.0, 0.5)])
@pytest.mark.parametrize("n", [5, 10, 20])
def test_series_remainder_bound(a, sigma, n):
    closed = engine.exponential_integral(a, sigma, OUT)
    partial = engine.exponential_integral(a, sigma, OUT, n_terms=n)
    bound = (a * sigma) ** (n + 1) / math.factorial(n + 1) * math.pi / sigma
    # plus the rounding floor of the double-precision sum
    assert abs(partial - closed) <= bound + 4 * np.finfo(float).eps * abs(closed)


def test_x_exponential_and_scattering():
    for sigma in (0.5, 1.0, 2.0, math.pi / 3):
        assert cmath.isclose(engine.x_exponential_integral(1.0, sigma, OUT),
                             1j * math.pi * cmath.exp(1j * sigma), rel_tol=1e-14)
        assert cmath.isclose(engine.scattering_integral(sigma, OUT),
                             math.pi * cmath.exp(1j * sigma), rel_tol=1e-14)
        assert cmath.isclose(engine.scattering_integral(sigma, IN),
                             math.pi * cmath.exp(-1j * sigma), rel_tol=1e-14)
        pv = engine.scattering_integral(sigma, PV)
        assert pv.imag == 0.0
        assert math.isclose(pv.real, math.pi * math.cos(sigma), rel_tol=1e-14)


def test_trig_parts():
    cos_part, sin_part = engine.trig_integrals(1.0, 1.0, PV)
    assert cos_part == 0
    assert sin_part.imag == 0.0
    assert math.isclose(sin_part.real, math.pi * math.cos(1.0), rel_tol=1e-15)


def test_rejects_nonpositive_frequency():
    with pytest.raises(ValueError):
        engine.exponential_integral(0.0, 1.0)
    with pytest.raises(ValueError):
        engine.x_exponential_integral(-1.0, 1.0)


def test_x_exponential_series_check_runs():
    # a*sigma below the check limit goes through the differentiated series
    assert engine.x_exponential_integral(3.0, 4.0, IN, check_series=True) == \
        engine.x_exponential_integral(3.0, 4.0, IN, check_series=False)


def test_branch_images():
    for sigma in (0.5, 1.0, 3.0):
        for a in (0.5, 1.0, 2.0):
            out = engine.exponential_integral(a, sigma, OUT)
            inc = engine.exponential_integral(a, sigma, IN)
            assert inc == out.conjugate()
            # the x-weighted integral is odd under sigma -> -sigma of its
            # phase but carries no 1/sigma, so Incoming = -conj(Outgoing)
            xo = engine.x_exponential_integral(a, sigma, OUT)
            xi = engine.x_exponential_integral(a, sigma, IN)
            assert xi == -xo.conjugate()


# -- end to end against residues -------------------------------------------

@pytest.mark.parametrize("r, s", [(0, -1), (1, -1), (2, -1), (0, -2)])
@pytest.mark.parametrize("sigma", [0.5, 1.0, 2.0, 5.0])
@pytest.mark.parametrize("branch", [OUT, IN, PV])
def test_ndim_matches_residue(r, s, sigma, branch):
    f = RationalOscIntegrand.from_powers(r, -s, sigma)
    if s == -2 and branch is PV:
        # no principal value at a double real pole
        with pytest.raises(residue.HigherOrderRealPole):
            residue.principal_value(f)
        return
    ndim = ndim_rs_ac(r, s, branch).to_complex(sigma)
    if f.arc_vanishes():
        ref = residue.principal_value(f) if branch is PV else residue.shifted_value(f, branch)
    else:
        ref = residue.damped_value(f, branch)
    assert abs(ndim - ref) <= 1e-13 * max(abs(ref), 1e-300) or ndim == ref


def test_exact_form_strings():
    assert engine.exact_form(0, -1, OUT) == "iπ·σ^-1"
    assert engine.exact_form(1, -1, PV) == "iπ"
