"""Benchmark: compiled vs pure-Python convolution kernels.

Times conv_trunc across sizes/coefficient magnitudes in both the
schoolbook and Kronecker regimes, plus an end-to-end eta-quotient
expansion.  Run:

    python3 benchmarks/bench_kernels.py
"""

from __future__ import annotations

import random
import time

import etaq._kernels_py as kpy

try:
    import etaq._ckernels as kc
except ImportError:
    kc = None


def timeit(fn, *args, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_conv() -> None:
    rng = random.Random(0)
    cases = [
        ("small 32x32, 1-digit", 32, 32, 9),
        ("small 96x96, 1-digit", 96, 96, 9),
        ("mid 256x256, 20-digit", 256, 256, 10**20),
        ("large 1200x1200, 40-digit", 1200, 1200, 10**40),
        ("large 2400x2400, 60-digit", 2400, 2400, 10**60),
    ]
    print(f"{'case':30s} {'python':>12s} {'cython':>12s} {'speedup':>9s}")
    for name, lx, ly, mag in cases:
        xs = [rng.randint(-mag, mag) for _ in range(lx)]
        ys = [rng.randint(-mag, mag) for _ in range(ly)]
        nout = lx + ly - 1
        t_py = timeit(kpy.conv_trunc, xs, ys, nout)
        if kc is None:
            print(f"{name:30s} {t_py*1e3:10.2f}ms {'n/a':>12s}")
            continue
        assert kpy.conv_trunc(xs, ys, nout) == kc.conv_trunc(xs, ys, nout)
        t_c = timeit(kc.conv_trunc, xs, ys, nout)
        print(f"{name:30s} {t_py*1e3:10.2f}ms {t_c*1e3:10.2f}ms {t_py/t_c:8.2f}x")


def bench_eta_expansion() -> None:
    import etaq.kernels
    from etaq.eta import EtaQuotient

    def expand_all(prec_q: int) -> None:
        for exps in [
            {1: -8, 2: 20, 4: -8},
            {1: -16, 2: 40, 4: -16},
            {1: 2, 2: -5, 4: 10, 8: -5, 16: 2},
        ]:
            q = EtaQuotient(max(exps), exps)
            q.expansion(q.offset() + 24 * prec_q)

    print()
    print(f"eta-quotient expansions to 200 q-exponents, backend={etaq.kernels.BACKEND}")
    print(f"  {timeit(expand_all, 200, repeat=3)*1e3:.1f} ms")
    print("(set ETAQ_PURE_PYTHON=1 and rerun to time the fallback end to end)")


if __name__ == "__main__":
    print("conv_trunc (truncated integer convolution), best of 5:")
    bench_conv()
    bench_eta_expansion()
