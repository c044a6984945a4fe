"""Compare the numba and pure-numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--seed 0]

Each kernel is called once untimed (JIT warm-up), then timed ``--repeat``
times; the best time is reported together with the agreement between the
two backends.
"""

import argparse
import time

import numpy as np

from mixbound import kernels
from mixbound import examples as ex
from mixbound.chain import stationary_distribution


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cases(rng):
    P = ex.random_lazy_reversible(20, rng)
    pi = stationary_distribution(P).weights
    F = pi[:, None] * P.entries
    yield "cheeger N=20", (lambda: kernels.cheeger_search_jit(F, pi, 1e-10)), (lambda: kernels.cheeger_search_numpy(F, pi, 1e-10))

    betas = np.sort(rng.uniform(0, 0.999, 63))
    yield ("pure-birth N=64 t=100000",
           lambda: kernels.pure_birth_masses_jit(betas, 100_000),
           lambda: kernels.pure_birth_masses_numpy(betas, 100_000))

    M = rng.dirichlet(np.ones(512), size=512)
    w = rng.dirichlet(np.ones(512))
    yield "tv/sep N=512", (lambda: kernels.worst_tv_sep_jit(M, w)), (lambda: kernels.worst_tv_sep_numpy(M, w))


def agreement(a, b):
    a = a[0] if isinstance(a, tuple) and np.ndim(a[0]) else a
    b = b[0] if isinstance(b, tuple) and np.ndim(b[0]) else b
    return float(np.max(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float))))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':28s} {'numba [s]':>11s} {'numpy [s]':>11s} {'speedup':>8s} {'max diff':>10s}")
    for name, jit_fn, np_fn in cases(rng):
        tj, oj = best_of(jit_fn, args.repeat)
        tn, on = best_of(np_fn, args.repeat)
        print(f"{name:28s} {tj:11.4f} {tn:11.4f} {tn / tj:8.1f} {agreement(oj, on):10.1e}")


if __name__ == "__main__":
    main()
