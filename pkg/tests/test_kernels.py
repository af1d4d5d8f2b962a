import math

import numpy as np
import pytest

from ndimscatter import kernels
from ndimscatter._gk15 import full_rule

needs_compiled = pytest.mark.skipif(kernels.compiled_adaptive is None, reason="compiled kernel not built")


def test_rule_exactness():
    x, wk, wg = (np.array(v) for v in full_rule())
    assert len(x) == 15
    assert np.count_nonzero(wg) == 7
    for deg in range(0, 23):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert np.dot(wk, x ** deg) == pytest.approx(exact, abs=1e-15)
        if deg <= 13:
            assert np.dot(wg, x ** deg) == pytest.approx(exact, abs=1e-15)


def _args(mode, center, lo, hi, part=0, a=0.0):
    # 1/(x^2 + 1) in factored form
    return (np.array([1.0]), np.array([1j, -1j]), np.array([1, 1]), 1 + 0j, a, part, mode,
            center, lo, hi, 1e-13)


@pytest.mark.parametrize("impl", ["python", "compiled"])
def test_direct_mode(impl):
    fn = kernels.python_adaptive if impl == "python" else kernels.compiled_adaptive
    if fn is None:
        pytest.skip("compiled kernel not built")
    v, err, n, ok = fn(*_args(kernels.MODE_DIRECT, 0.0, -3.0, 5.0))
    assert ok and err <= 1e-13
    assert v == pytest.approx(math.atan(5) + math.atan(3), abs=1e-13)


@pytest.mark.parametrize("impl", ["python", "compiled"])
def test_invert_mode(impl):
    fn = kernels.python_adaptive if impl == "python" else kernels.compiled_adaptive
    if fn is None:
        pytest.skip("compiled kernel not built")
    # x = 1/t maps (0, 1/2] onto [2, inf)
    v, _, _, ok = fn(*_args(kernels.MODE_INVERT, 1.0, 0.0, 0.5))
    assert ok
    assert v == pytest.approx(math.pi / 2 - math.atan(2), abs=1e-13)


@pytest.mark.parametrize("impl", ["python", "compiled"])
def test_pair_mode(impl):
    fn = kernels.python_adaptive if impl == "python" else kernels.compiled_adaptive
    if fn is None:
        pytest.skip("compiled kernel not built")
    # f(1+t) + f(1-t) for 1/(x^2+1) integrated over t in [0, 1] is the integral over [0, 2]
    v, _, _, ok = fn(*_args(kernels.MODE_PAIR, 1.0, 0.0, 1.0))
    assert ok
    assert v == pytest.approx(math.atan(2), abs=1e-13)


def test_oscillatory_part():
    # imaginary part of e^{ix}/(x^2+1) over a symmetric interval vanishes,
    # real part over R is pi/e
    v, _, _, ok = kernels.adaptive(*_args(kernels.MODE_DIRECT, 0.0, -200.0, 200.0, part=1, a=1.0)[:-1],
                                   1e-12, 4000, 64)
    assert ok and abs(v) < 1e-12
    v, _, _, ok = kernels.adaptive(*_args(kernels.MODE_DIRECT, 0.0, -200.0, 200.0, part=0, a=1.0)[:-1],
                                   1e-12, 4000, 64)
    assert v == pytest.approx(math.pi / math.e, abs=1e-4)


@needs_compiled
def test_backends_agree():
    rng = np.random.default_rng(7)
    for _ in range(50):
        deg = int(rng.integers(0, 3))
        num = rng.normal(size=deg + 1)
        poles = rng.normal(size=2) + 1j * rng.uniform(0.2, 1.0, size=2)
        mults = rng.integers(1, 3, size=2)
        a = float(rng.uniform(0, 3))
        lo, hi = sorted(rng.uniform(-5, 5, size=2))
        for part in (0, 1):
            args = (num, poles, mults, 1.3 + 0j, a, part, 0, 0.0, lo, hi, 1e-11, 500, 2)
            vp = kernels.python_adaptive(*args)
            vc = kernels.compiled_adaptive(*args)
            assert vp[2] == vc[2] and vp[3] == vc[3]
            # summation order differs (np.dot vs loop); agree far inside tol
            assert abs(vc[0] - vp[0]) <= 1e-2 * 1e-11


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    if kernels.BACKEND == "python":
        assert kernels.adaptive is kernels.python_adaptive


def test_limit_reports_unconverged():
    v, err, n, ok = kernels.python_adaptive(*_args(kernels.MODE_DIRECT, 0.0, -3.0, 5.0)[:-1], 1e-30, 4)
    assert not ok and n == 4 and err > 0
