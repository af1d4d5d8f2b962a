"""Direct numerical evaluation of improper rational * exp(iax) integrals.

Principal values come from symmetric excision about each real pole followed
by extrapolation in the excision radius; shifted-pole values from
integrating the displaced (smooth) integrand at several epsilons and
extrapolating epsilon -> 0.  All panel work is real: the real and imaginary
parts are integrated separately by the kernels in ``kernels``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .integrands import Branch, RationalOscIntegrand
from .poles import find_poles, shifted_poles

__all__ = [
    "QuadratureConfig",
    "QuadratureEstimate",
    "NoConvergence",
    "NonSimpleRealPole",
    "pv_quadrature",
    "tail_correction",
    "epsilon_shift_quadrature",
    "default_epsilons",
]

PANEL_LIMIT = 5000


class NoConvergence(RuntimeError):
    pass


class NonSimpleRealPole(ValueError):
    pass


@dataclass(frozen=True)
class QuadratureConfig:
    excision_radii: tuple = (1e-1, 3e-2, 1e-2, 3e-3)
    truncation_radius: Optional[float] = None
    segment_tolerance: float = 1e-10
    tail_periods: int = 40

    def __post_init__(self):
        radii = tuple(float(r) for r in self.excision_radii)
        object.__setattr__(self, "excision_radii", radii)
        if len(radii) < 2:
            raise ValueError("need at least two excision radii to extrapolate")
        if any(r <= 0 for r in radii):
            raise ValueError("excision radii must be positive")
        if any(b >= a for a, b in zip(radii, radii[1:])):
            raise ValueError("excision radii must be strictly descending")
        if self.truncation_radius is not None and not self.truncation_radius > 0:
            raise ValueError("truncation_radius must be positive")
        if not self.segment_tolerance > 0:
            raise ValueError("segment_tolerance must be positive")
        if int(self.tail_periods) != self.tail_periods or self.tail_periods < 2:
            raise ValueError("tail_periods must be an integer >= 2")

    @classmethod
    def from_mapping(cls, items: dict) -> "QuadratureConfig":
        """Build from string values, e.g. parsed key=value lines."""
        known = {f.name for f in fields(cls)}
        kw = {}
        for key, raw in items.items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            if key == "excision_radii":
                kw[key] = tuple(float(v) for v in str(raw).replace(",", " ").split())
            elif key == "truncation_radius":
                kw[key] = None if str(raw).lower() in ("", "none", "auto") else float(raw)
            elif key == "tail_periods":
                kw[key] = int(raw)
            else:
                kw[key] = float(raw)
        return cls(**kw)

    def with_updates(self, **kw) -> "QuadratureConfig":
        return replace(self, **kw)

    def radius_for(self, f: RationalOscIntegrand, poles=None) -> float:
        poles = find_poles(f) if poles is None else poles
        reach = max((abs(_loc(p).real) for p in poles), default=0.0)
        if self.truncation_radius is None:
            R = min(40 * math.pi / max(f.osc_freq, 1.0), 400.0)
            # keep the default usable when poles sit far out
            while R <= reach + 1:
                R *= 2
        else:
            R = float(self.truncation_radius)
        if not R > reach + 1:
            raise ValueError(f"truncation radius {R} must exceed max pole {reach} + 1")
        return R


@dataclass
class QuadratureEstimate:
    value: complex
    error_estimate: float
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.value = complex(self.value)
        self.error_estimate = float(self.error_estimate)
        if not (cmath_isfinite(self.value) and self.error_estimate >= 0):
            raise ValueError("estimate must be finite with a non-negative error")


def cmath_isfinite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _loc(p):
    return p.location if hasattr(p, "location") else p[0]


class _Prepared:
    """Kernel arguments for one integrand with a given pole list."""

    def __init__(self, f: RationalOscIntegrand, poles):
        self.num = np.asarray(f.numerator, dtype=float)
        self.poles = np.array([complex(_loc(p)) for p in poles], dtype=complex)
        self.mults = np.array([p.multiplicity if hasattr(p, "multiplicity") else p[1] for p in poles],
                              dtype=np.int64)
        self.lead = complex(f.denominator[-1])
        self.a = float(f.osc_freq)
        need_imag = self.a != 0 or bool(np.any(self.poles.imag != 0))
        self.parts = (kernels.PART_REAL, kernels.PART_IMAG) if need_imag else (kernels.PART_REAL,)
        self.panels = 0
        self.unconverged = 0

    def integrate(self, mode, center, lo, hi, tol, n_init=1):
        """Complex integral of one mapped piece; returns (value, abserr)."""
        out = [0.0, 0.0]
        err = 0.0
        for part in self.parts:
            v, e, n, ok = kernels.adaptive(self.num, self.poles, self.mults, self.lead, self.a,
                                           part, mode, center, lo, hi, tol, PANEL_LIMIT, n_init)
            out[part] = v
            err += e
            self.panels += n
            self.unconverged += 0 if ok else 1
        return complex(out[0], out[1]), err

    def direct(self, lo, hi, tol):
        if hi <= lo:
            return 0j, 0.0
        n_init = max(1, math.ceil((hi - lo) * self.a / math.pi))
        return self.integrate(kernels.MODE_DIRECT, 0.0, lo, hi, tol, n_init)


def _split_at_zero(lo, hi):
    if lo < 0 < hi:
        return [(lo, 0.0), (0.0, hi)]
    return [(lo, hi)]


def _side(lo, hi):
    return "left" if hi <= 0 else "right"


def _fit_limit(xs, values, powers):
    """Constant term of the exact fit values = c0 + sum_j c_j x**powers[j]."""
    x = np.asarray(xs, dtype=float) / xs[0]
    A = np.array([[1.0] + [t ** q for q in powers[:len(x) - 1]] for t in x])
    return complex(np.linalg.solve(A, np.asarray(values, dtype=complex))[0])


def _odd_basis_extrapolate(deltas, values):
    # pair sums are even in the radius, so the excised integral is odd in it
    return _fit_limit(deltas, values, [2 * j + 1 for j in range(len(deltas))])


def _tail_side(prep, sign, R, cfg):
    """Integral over x in [R, inf) (sign=+1) or (-inf, -R] (sign=-1)."""
    tol = cfg.segment_tolerance
    if prep.a == 0:
        # x = sign/t maps (0, 1/R] onto the tail; mode INVERT evaluates f(c/t)/t^2
        return prep.integrate(kernels.MODE_INVERT, float(sign), 0.0, 1.0 / R, tol)
    step = math.pi / prep.a
    n = int(cfg.tail_periods)
    terms = []
    err = 0.0
    for k in range(n):
        lo, hi = R + k * step, R + (k + 1) * step
        if sign < 0:
            lo, hi = -hi, -lo
        v, e = prep.integrate(kernels.MODE_DIRECT, 0.0, lo, hi, tol)
        terms.append(v)
        err += e
    partial = np.cumsum(terms)

    def averaged(s):
        s = np.array(s)
        while len(s) > 1:
            s = 0.5 * (s[1:] + s[:-1])
        return complex(s[0])

    best = averaged(partial)
    prev = averaged(partial[:-1])
    return best, err + abs(best - prev)


def _tail(prep, R, cfg):
    left, el = _tail_side(prep, -1, R, cfg)
    right, er = _tail_side(prep, +1, R, cfg)
    return left, right, el + er


def tail_correction(f: RationalOscIntegrand, R: float, cfg: QuadratureConfig = None) -> complex:
    """Two-sided contribution of |x| > R."""
    cfg = cfg or QuadratureConfig()
    poles = find_poles(f)
    _check_tail(f, poles, R)
    left, right, _ = _tail(_Prepared(f, poles), R, cfg)
    return left + right


def _check_tail(f, poles, R):
    if any(abs(_loc(p).real) >= R and abs(_loc(p).imag) < 1 for p in poles):
        raise ValueError("tail must start beyond every pole")
    gap = f.den_degree - f.num_degree
    if gap < (1 if f.osc_freq > 0 else 2):
        raise ValueError(f"tail does not converge: degree gap {gap} with osc_freq={f.osc_freq}")


def pv_quadrature(f: RationalOscIntegrand, cfg: QuadratureConfig = None,
                  left_power: float = 1.0) -> QuadratureEstimate:
    """Principal value by symmetric excision and extrapolation in the radius.

    ``left_power != 1`` excises (p - delta**left_power, p + delta) instead: the
    asymmetric limit has no value, and the extrapolation check rejects it
    with NoConvergence.
    """
    cfg = cfg or QuadratureConfig()
    poles = find_poles(f)
    real = sorted(p.location.real for p in poles if p.on_real_axis)
    for p in poles:
        if p.on_real_axis and p.multiplicity > 1:
            raise NonSimpleRealPole(f"real pole {p.location.real} has multiplicity {p.multiplicity}")
    R = cfg.radius_for(f, poles)
    _check_tail(f, poles, R)
    prep = _Prepared(f, poles)
    tol = cfg.segment_tolerance
    radii = cfg.excision_radii

    # half-widths of the windows handled in pair mode
    widths, scales = [], []
    for i, c in enumerate(real):
        h = min(1.0, 0.5 * (R - abs(c)))
        if i > 0:
            h = min(h, 0.45 * (c - real[i - 1]))
        if i + 1 < len(real):
            h = min(h, 0.45 * (real[i + 1] - c))
        if c != 0:
            h = min(h, 0.9 * abs(c))
        # shrink the radii when another singularity is close, so the odd fit
        # in delta stays well inside the pair integrand's Taylor disc
        rho = min((abs(q.location - c) for q in poles if abs(q.location - c) > 0), default=math.inf)
        s = min(1.0, 0.5 * rho)
        if not h > s * radii[0]:
            raise ValueError(f"largest excision radius {s * radii[0]} does not fit beside pole {c}")
        widths.append(h)
        scales.append(s)

    sides = {"left": 0j, "right": 0j}
    seg_err = 0.0
    cuts = [-R]
    for c, h in zip(real, widths):
        cuts += [c - h, c + h]
    cuts.append(R)
    segments = []
    for lo, hi in zip(cuts[0::2], cuts[1::2]):
        for a0, b0 in _split_at_zero(lo, hi):
            v, e = prep.direct(a0, b0, tol)
            segments.append({"lo": a0, "hi": b0, "value": v, "error": e})
            sides[_side(a0, b0)] += v
            seg_err += e
    outer = math.fsum(s["value"].real for s in segments) + 1j * math.fsum(s["value"].imag for s in segments)

    # near-pole pieces, built up from the widest radius inwards
    near = np.zeros(len(radii), dtype=complex)
    near_side = {"left": np.zeros(len(radii), dtype=complex), "right": np.zeros(len(radii), dtype=complex)}
    for c, h, s in zip(real, widths, scales):
        acc = 0j
        upper = h
        for k, d in enumerate(s * r for r in radii):
            v, e = prep.integrate(kernels.MODE_PAIR, c, d, upper, tol)
            acc += v
            seg_err += e
            upper = d
            extra = 0j
            if left_power != 1.0:
                d_left = d ** left_power
                if d_left < d:
                    extra, e = prep.direct(c - d, c - d_left, tol)
                else:
                    extra, e = prep.direct(c - d_left, c - d, tol)
                    extra = -extra
                seg_err += e
            near[k] += acc + extra
            side = "left" if c < 0 else "right"
            if c == 0:
                near_side["left"][k] += 0.5 * (acc + extra)
                near_side["right"][k] += 0.5 * (acc + extra)
            else:
                near_side[side][k] += acc + extra

    if real:
        best = _odd_basis_extrapolate(radii, near)
        prev = _odd_basis_extrapolate(radii[1:], near[1:])
        residual = abs(best - prev)
        side_limits = {s: _odd_basis_extrapolate(radii, near_side[s]) for s in sides}
    else:
        best, residual = 0j, 0.0
        side_limits = {s: 0j for s in sides}
    t_left, t_right, tail_err = _tail(prep, R, cfg)
    value = outer + best + t_left + t_right
    scale = max(1.0, abs(value))
    diagnostics = {
        "truncation_radius": R,
        "segments": segments,
        "near_pole": {"radii": list(radii), "values": list(near), "windows": list(zip(real, widths)),
                      "radius_scales": scales},
        "extrapolation": {"value": best, "previous": prev if real else 0j, "residual": residual},
        "tail": {"left": t_left, "right": t_right, "error": tail_err},
        "left": sides["left"] + side_limits["left"] + t_left,
        "right": sides["right"] + side_limits["right"] + t_right,
        "panels": prep.panels,
        "unconverged_pieces": prep.unconverged,
        "backend": kernels.BACKEND,
    }
    if residual > 10 * tol * scale:
        raise NoConvergence(f"excision extrapolants differ by {residual:.3g} "
                            f"(limit {10 * tol * scale:.3g})")
    error = seg_err + residual + tail_err
    return QuadratureEstimate(value, error, diagnostics)


def default_epsilons(f: RationalOscIntegrand, count: int = 6) -> tuple:
    """Geometric epsilon ladder scaled to the smallest real pole distance."""
    real = [abs(p.location.real) for p in find_poles(f) if p.on_real_axis and p.location.real != 0]
    base = 0.2 * min(real, default=1.0)
    return tuple(base * 2.0 ** -k for k in range(count))


def _richardson(eps, values, order):
    """Limits from fits to the last m members, m = 1..n, with powers order, order+1, ..."""
    powers = [order + j for j in range(len(eps))]
    return [_fit_limit(eps[-m:], values[-m:], powers) for m in range(1, len(eps) + 1)]


def _observed_order(eps, values):
    d1 = abs(values[-2] - values[-3])
    d2 = abs(values[-1] - values[-2])
    if d1 == 0 or d2 == 0:
        return 1.0, 1
    p = math.log(d1 / d2) / math.log(eps[-2] / eps[-1])
    rounded = round(p)
    if rounded >= 1 and abs(p - rounded) <= 0.3:
        return p, int(rounded)
    return p, max(p, 0.5)


def epsilon_shift_quadrature(f: RationalOscIntegrand, shift, epsilons: Sequence[float] = None,
                             cfg: QuadratureConfig = None) -> QuadratureEstimate:
    """Shifted-pole value extrapolated to eps -> 0+.

    Each eps integrates the displaced integrand over [-R, R] with breakpoints
    at the pole abscissae, plus the tail.  Three or more eps use Richardson
    elimination with the observed leading order; two assume order one; a
    single eps returns the finite-eps integral unextrapolated.
    """
    cfg = cfg or QuadratureConfig()
    shift = Branch.parse(shift)
    if shift is Branch.PV:
        raise ValueError("shift must be outgoing or incoming")
    if epsilons is None:
        epsilons = default_epsilons(f)
    eps = [float(e) for e in epsilons]
    if not eps or any(e <= 0 for e in eps):
        raise ValueError("epsilons must be positive")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilons must be strictly descending")
    base_poles = find_poles(f)
    R = cfg.radius_for(f, base_poles)
    _check_tail(f, base_poles, R)
    tol = cfg.segment_tolerance

    values, errors, details = [], [], []
    for e in eps:
        poles = shifted_poles(f, shift, e)
        prep = _Prepared(f, poles)
        cuts = sorted({-R, R, 0.0} | {z.real for z, _ in poles if abs(z.real) < R})
        total, err = 0j, 0.0
        for lo, hi in zip(cuts, cuts[1:]):
            v, er = prep.direct(lo, hi, tol)
            total += v
            err += er
        t_left, t_right, t_err = _tail(prep, R, cfg)
        total += t_left + t_right
        err += t_err
        values.append(total)
        errors.append(err)
        details.append({"epsilon": e, "value": total, "error": err, "panels": prep.panels,
                        "unconverged_pieces": prep.unconverged})

    diag = {"truncation_radius": R, "members": details, "backend": kernels.BACKEND}
    if len(eps) == 1:
        diag["extrapolation"] = None
        return QuadratureEstimate(values[0], errors[0], diag)
    if len(eps) == 2:
        p_obs, order = None, 1
    else:
        p_obs, order = _observed_order(eps, values)
    diagonal = _richardson(eps, values, order)
    best = diagonal[-1]
    step = abs(diagonal[-1] - diagonal[-2])
    raw = abs(values[-1] - values[-2])
    diag["extrapolation"] = {"observed_order": p_obs, "order": order, "diagonal": diagonal,
                             "residual": step}
    if step > raw and step > 10 * tol * max(1.0, abs(best)):
        raise NoConvergence(f"epsilon extrapolation does not contract ({step:.3g} > {raw:.3g})")
    return QuadratureEstimate(best, step + max(errors), diag)
