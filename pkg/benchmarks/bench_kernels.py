"""Compare the compiled and pure-Python quadrature kernels.

Times a full principal-value and epsilon-shift run per integrand with each
backend, and reports the best of --repeat runs and the largest disagreement.
"""
import argparse
import statistics
import time

from ndimscatter import kernels
from ndimscatter.integrands import Branch, RationalOscIntegrand
from ndimscatter.quadrature import epsilon_shift_quadrature, pv_quadrature

CASES = {
    "1/(x^2-1)": RationalOscIntegrand.from_powers(0, 1, 1.0),
    "e^{ix}/(x^2-1)": RationalOscIntegrand.from_powers(0, 1, 1.0, 1.0),
    "x e^{2ix}/(x^2-1/4)": RationalOscIntegrand.from_powers(1, 1, 0.5, 2.0),
}
TASKS = {
    "pv": lambda f: pv_quadrature(f).value,
    "shift": lambda f: epsilon_shift_quadrature(f, Branch.OUTGOING).value,
}


def timed(func, f, repeat):
    times, value = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = func(f)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), value


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    backends = {"python": kernels.python_adaptive}
    if kernels.compiled_adaptive is not None:
        backends["cython"] = kernels.compiled_adaptive
    else:
        print("compiled kernel not built; timing the Python kernel only")

    original = kernels.adaptive
    print(f"{'integrand':<22}{'task':<7}" + "".join(f"{b + ' ms':>14}" for b in backends)
          + f"{'speedup':>10}{'max |diff|':>12}")
    try:
        for name, f in CASES.items():
            for task, func in TASKS.items():
                best, values = {}, {}
                for b, impl in backends.items():
                    kernels.adaptive = impl
                    best[b], _, values[b] = timed(func, f, args.repeat)
                speed = best["python"] / best["cython"] if "cython" in best else float("nan")
                diff = max(abs(values[b] - values["python"]) for b in values)
                print(f"{name:<22}{task:<7}" + "".join(f"{1e3 * best[b]:>14.2f}" for b in backends)
                      + f"{speed:>10.1f}{diff:>12.1e}")
    finally:
        kernels.adaptive = original


if __name__ == "__main__":
    main()
