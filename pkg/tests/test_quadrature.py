import cmath
import math

import pytest

from ndimscatter import kernels, quadrature
from ndimscatter.integrands import Branch, RationalOscIntegrand
from ndimscatter.quadrature import (
    NoConvergence,
    NonSimpleRealPole,
    QuadratureConfig,
    epsilon_shift_quadrature,
    pv_quadrature,
    tail_correction,
)
from ndimscatter.residue import principal_value, shifted_value

OUT, IN = Branch.OUTGOING, Branch.INCOMING
INV_SQ = RationalOscIntegrand.from_powers(0, 1, 1.0)


def xexp(sigma, a=1.0):
    return RationalOscIntegrand.from_powers(1, 1, sigma, a)


def test_config_defaults_and_validation():
    cfg = QuadratureConfig()
    assert cfg.excision_radii == (1e-1, 3e-2, 1e-2, 3e-3)
    assert cfg.segment_tolerance == 1e-10 and cfg.tail_periods == 40
    assert cfg.radius_for(INV_SQ) == 40 * math.pi
    assert cfg.radius_for(xexp(1.0, 2.0)) == 20 * math.pi
    with pytest.raises(ValueError):
        QuadratureConfig(excision_radii=(1e-2, 1e-1))
    with pytest.raises(ValueError):
        QuadratureConfig(excision_radii=(1e-1, 1e-1))
    with pytest.raises(ValueError):
        QuadratureConfig(segment_tolerance=0)
    with pytest.raises(ValueError):
        QuadratureConfig(truncation_radius=1.5).radius_for(INV_SQ)


def test_config_from_mapping():
    cfg = QuadratureConfig.from_mapping({"excision_radii": "0.2, 0.1 0.05", "tail_periods": "12",
                                         "truncation_radius": "auto", "segment_tolerance": "1e-9"})
    assert cfg.excision_radii == (0.2, 0.1, 0.05)
    assert cfg.tail_periods == 12 and cfg.truncation_radius is None
    with pytest.raises(ValueError):
        QuadratureConfig.from_mapping({"bogus": "1"})


def test_pv_examples():
    est = pv_quadrature(INV_SQ)
    assert abs(est.value) <= 1e-8
    est = pv_quadrature(xexp(1.0))
    assert abs(est.value.imag - math.pi * math.cos(1.0)) <= 1e-6
    est = pv_quadrature(RationalOscIntegrand((1.0,), (1.0, 0.0, 1.0)))
    assert abs(est.value - math.pi) <= 1e-10


def test_pv_diagnostics_shape():
    est = pv_quadrature(xexp(2.0))
    d = est.diagnostics
    assert {"segments", "tail", "extrapolation", "left", "right"} <= set(d)
    assert est.error_estimate >= 0
    assert d["extrapolation"]["residual"] <= est.error_estimate
    assert cmath.isclose(d["left"] + d["right"], est.value, abs_tol=1e-12)


def test_pv_errors():
    with pytest.raises(NonSimpleRealPole):
        pv_quadrature(RationalOscIntegrand.from_powers(0, 2, 1.0))
    with pytest.raises(ValueError):
        pv_quadrature(RationalOscIntegrand.from_powers(1, 1, 1.0))


def test_asymmetric_excision_fails():
    for f in (INV_SQ, xexp(1.0)):
        with pytest.raises(NoConvergence):
            pv_quadrature(f, left_power=2.0)


def test_tail_examples():
    cfg = QuadratureConfig()
    tail = tail_correction(INV_SQ, 50.0, cfg)
    assert abs(tail - math.log(51 / 49)) <= 1e-9
    # halving behaviour of a 1/x^2 tail
    assert tail_correction(INV_SQ, 100.0, cfg).real <= 0.5 * tail.real + 1e-12


def test_oscillatory_tail_against_stage_difference():
    f = xexp(1.0)
    R = 40 * math.pi
    cfg = QuadratureConfig(truncation_radius=R, tail_periods=30)
    est = pv_quadrature(f, cfg)
    finite = est.value - est.diagnostics["tail"]["left"] - est.diagnostics["tail"]["right"]
    tail = tail_correction(f, R, cfg)
    assert abs(tail - (principal_value(f) - finite)) <= 1e-6


def test_epsilon_shift_examples():
    est = epsilon_shift_quadrature(INV_SQ, OUT, [1e-1, 1e-2, 1e-3])
    assert abs(est.value - 1j * math.pi) <= 1e-4
    est = epsilon_shift_quadrature(INV_SQ, IN, [1e-1, 1e-2, 1e-3])
    assert abs(est.value + 1j * math.pi) <= 1e-4
    est = epsilon_shift_quadrature(INV_SQ, OUT, [1e-2])
    assert est.diagnostics["extrapolation"] is None
    assert abs(est.value - 1j * math.pi / (1 + 1e-2j)) <= 1e-5


def test_epsilon_shift_finite_eps_matches_residue():
    f = xexp(1.5, 2.0)
    for e in (0.3, 0.05):
        est = epsilon_shift_quadrature(f, OUT, [e])
        assert abs(est.value - shifted_value(f, OUT, e)) <= 1e-8


def test_epsilon_shift_argument_checks():
    with pytest.raises(ValueError):
        epsilon_shift_quadrature(INV_SQ, OUT, [1e-3, 1e-2])
    with pytest.raises(ValueError):
        epsilon_shift_quadrature(INV_SQ, Branch.PV, [1e-2])


def test_default_epsilons():
    eps = quadrature.default_epsilons(RationalOscIntegrand.from_powers(0, 1, 2.0))
    assert eps[0] == pytest.approx(0.4) and len(eps) == 6
    assert all(b == pytest.approx(a / 2) for a, b in zip(eps, eps[1:]))


def test_double_pole_shift():
    f = RationalOscIntegrand.from_powers(0, 2, 1.0)
    est = epsilon_shift_quadrature(f, OUT)
    assert abs(est.value + 0.5j * math.pi) <= 1e-6


def test_mean_property():
    for sigma, a in ((1.0, 1.0), (0.5, 2.0), (2.0, 1.0)):
        f = xexp(sigma, a)
        out = epsilon_shift_quadrature(f, OUT)
        inc = epsilon_shift_quadrature(f, IN)
        pv = pv_quadrature(f)
        assert abs((out.value + inc.value) / 2 - pv.value) <= \
            out.error_estimate + inc.error_estimate + pv.error_estimate


def test_pure_backend_gives_same_answer(monkeypatch):
    ref = pv_quadrature(xexp(1.0)).value
    monkeypatch.setattr(kernels, "adaptive", kernels.python_adaptive)
    est = pv_quadrature(xexp(1.0))
    assert abs(est.value - ref) <= 1e-12


def test_estimate_validation():
    with pytest.raises(ValueError):
        quadrature.QuadratureEstimate(complex(math.nan, 0), 0.0)
    with pytest.raises(ValueError):
        quadrature.QuadratureEstimate(0j, -1.0)
