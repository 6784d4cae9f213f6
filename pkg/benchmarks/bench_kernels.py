#!/usr/bin/env python3
"""Benchmark: compiled Cython blade kernel vs the pure-Python fallback.

Times the Clifford product of dense random multivectors over a range of
dimensions, plus one composite workload (Clifford-bracket Jacobi) that
mirrors the identity suites.  Run after an editable install:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from spingeo import kernels
from spingeo.algebra import Multivector, Signature, random_multivector


def time_fn(fn, reps):
    t0 = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - t0) / reps


def main():
    rng = np.random.default_rng(0)
    print(f"compiled kernel available: {kernels.USING_COMPILED}")
    print(f"{'dim':>4} {'terms':>6} {'pure (us)':>12} {'compiled (us)':>14} {'speedup':>8}")
    for dim in (3, 4, 5, 6, 8, 10):
        sig = Signature(dim, 0)
        a = random_multivector(sig, rng)
        b = random_multivector(sig, rng)
        reps = max(3, 3000 // (1 << dim))
        t_pure = time_fn(lambda: kernels.mul_terms_pure(
            a.terms, b.terms, dim, sig.neg_mask), reps)
        if kernels.USING_COMPILED:
            t_comp = time_fn(lambda: kernels.mul_terms_compiled(
                a.terms, b.terms, dim, sig.neg_mask), reps)
            ratio = t_pure / t_comp
            print(f"{dim:>4} {len(a.terms):>6} {t_pure*1e6:>12.1f} "
                  f"{t_comp*1e6:>14.1f} {ratio:>7.1f}x")
        else:
            print(f"{dim:>4} {len(a.terms):>6} {t_pure*1e6:>12.1f} {'-':>14} {'-':>8}")

    # composite workload: Clifford-bracket Jacobi identity, dim 5
    sig = Signature(5, 0)
    ms = [random_multivector(sig, rng) for _ in range(3)]

    def jacobi():
        a, b, c = ms
        return (a.cbracket(b.cbracket(c)) + b.cbracket(c.cbracket(a))
                + c.cbracket(a.cbracket(b))).norm()

    t_auto = time_fn(jacobi, 20)
    print(f"\nJacobi identity (dim 5, kernel auto-selected): {t_auto*1e3:.2f} ms/instance")


if __name__ == "__main__":
    main()
