"""Benchmark the numba kernels against their pure-numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeats N]

Times the four hot kernels (Wigner-d half-step recursion, forward/inverse
transform accumulations, Clebsch-Gordan transfer, triple-correlation grid)
on representative desk-scale sizes with both backends and prints the
speedups.  The same dispatch functions are exercised by the test suite,
so the two paths are interchangeable by construction.
"""

import argparse
import time

import numpy as np

from bispect import kernels
from bispect.groups import SU2, haar_quadrature
from bispect.wigner import little_d_stack, m_values, wigner_stack_on_rule


def _time(fn, repeats):
    fn()  # warm-up (JIT compile / cache priming)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_half_step(repeats):
    rng = np.random.default_rng(0)
    out = {}
    for nb, n in ((64, 16), (256, 32)):
        src = rng.standard_normal((nb, n, n))
        c = rng.uniform(0.2, 0.9, nb)
        s = np.sqrt(1 - c**2)
        for backend in ("numpy", "numba"):
            out[(f"half_step nb={nb} n={n}", backend)] = _time(
                lambda: kernels.half_step(src, c, s, backend=backend), repeats
            )
    return out


def bench_transforms(repeats):
    rng = np.random.default_rng(1)
    out = {}
    rule = haar_quadrature(12, SU2)
    stack = wigner_stack_on_rule(6, SU2, rule)
    values = rng.standard_normal(rule.size) + 1j * rng.standard_normal(rule.size)
    coeff = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    for backend in ("numpy", "numba"):
        out[(f"weighted_projection N={rule.size} d=7", backend)] = _time(
            lambda: kernels.weighted_projection(rule.weights, values, stack, backend=backend), repeats
        )
        out[(f"trace_synthesis N={rule.size} d=7", backend)] = _time(
            lambda: kernels.trace_synthesis(coeff, stack, backend=backend), repeats
        )
    return out


def bench_cg_transfer(repeats):
    rng = np.random.default_rng(2)
    out = {}
    for p in (4, 6):
        x, w = np.polynomial.legendre.leggauss(2 * p + 1)
        betas = np.arccos(x)
        planes = little_d_stack(2 * p, betas)
        dp = dq = planes[p]
        da = planes[2 * p]
        m2 = np.round(2 * m_values(p, SU2)).astype(np.int64)
        seed = rng.standard_normal((p + 1, p + 1))
        for backend in ("numpy", "numba"):
            out[(f"cg_transfer p=q={p}", backend)] = _time(
                lambda: kernels.cg_transfer(dp, dq, da, w / 2, m2, m2, 2 * p, seed, backend=backend),
                repeats,
            )
    return out


def bench_triple_grid(repeats):
    rng = np.random.default_rng(3)
    out = {}
    for m, n in ((108, 1372), (256, 2916)):
        wf = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        u = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
        for backend in ("numpy", "numba"):
            out[(f"triple_grid {m}x{n}", backend)] = _time(
                lambda: kernels.triple_grid(wf, u, backend=backend), repeats
            )
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    results = {}
    for bench in (bench_half_step, bench_transforms, bench_cg_transfer, bench_triple_grid):
        results.update(bench(args.repeats))

    names = sorted({name for name, _ in results})
    width = max(len(n) for n in names)
    print(f"{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name in names:
        t_np = results[(name, "numpy")]
        t_nb = results[(name, "numba")]
        print(f"{name:<{width}}  {t_np * 1e3:>8.3f}ms  {t_nb * 1e3:>8.3f}ms  {t_np / t_nb:>7.2f}x")


if __name__ == "__main__":
    main()
