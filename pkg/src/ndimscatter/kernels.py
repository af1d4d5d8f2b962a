"""Quadrature kernel selection: compiled extension if importable, else numpy.

Set NDIM_SCATTER_PURE=1 to force the pure-Python kernel.
"""
import os

from . import _kernels_py

MODE_DIRECT = _kernels_py.MODE_DIRECT
MODE_PAIR = _kernels_py.MODE_PAIR
MODE_INVERT = _kernels_py.MODE_INVERT
PART_REAL = _kernels_py.PART_REAL
PART_IMAG = _kernels_py.PART_IMAG

python_adaptive = _kernels_py.adaptive

try:
    from ._kernels import adaptive as compiled_adaptive
except ImportError:  # extension not built
    compiled_adaptive = None

if compiled_adaptive is not None and not os.environ.get("NDIM_SCATTER_PURE"):
    adaptive = compiled_adaptive
    BACKEND = "cython"
else:
    adaptive = python_adaptive
    BACKEND = "python"
