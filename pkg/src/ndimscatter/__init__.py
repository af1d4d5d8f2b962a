"""Negative-dimension evaluation of improper scattering integrals, with residue
and quadrature cross-checks."""
from .exact import ExactValue, HalfInteger, Pole, gamma_half_integer, pochhammer, pochhammer_reflect
from .integrands import Branch, Integrand, PoleSite, RationalOscIntegrand
from .engine import (
    exponential_integral,
    match_double_series,
    match_single_series,
    ndim_ac,
    ndim_power_integral,
    ndim_rs,
    ndim_rs_ac,
    scattering_integral,
    trig_integrals,
    x_exponential_integral,
)
from .residue import damped_value, find_poles, principal_value, residue_at, shifted_value
from .quadrature import (
    NoConvergence,
    QuadratureConfig,
    QuadratureEstimate,
    epsilon_shift_quadrature,
    pv_quadrature,
    tail_correction,
)
from .report import ComparisonReport

__version__ = "0.1.0"
