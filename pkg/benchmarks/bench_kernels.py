"""Time the compiled RK4 kernel against the numpy fallback.

    python benchmarks/bench_kernels.py [--systems N] [--steps N] [--repeat N]
"""
import argparse
import time

import numpy as np

from qdimer import kernels
from qdimer.kernels import _fallback


def make_batch(n, steps, seed=0):
    rng = np.random.default_rng(seed)
    H = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    H[:, 0, 1] = H[:, 1, 0]
    h = np.full(n, 1e-3)
    nsteps = rng.integers(steps // 2, steps + 1, size=n).astype(np.int64)
    c0 = np.tile(np.array([1.0, 0.0], dtype=complex), (n, 1))
    return H, h, nsteps, c0


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--systems", type=int, default=200)
    ap.add_argument("--steps", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    batch = make_batch(args.systems, args.steps)
    total = int(batch[2].sum())
    t_py, ref = best_of(_fallback.rk4_batch, batch, args.repeat)
    print(f"systems={args.systems} total steps={total}")
    print(f"python   {t_py:8.3f} s  {t_py / total * 1e9:8.1f} ns/step")
    if kernels.BACKEND != "compiled":
        print("compiled extension not built; only the fallback was timed")
        return
    t_c, out = best_of(kernels.rk4_batch, batch, args.repeat)
    diff = np.max(np.abs(out - ref))
    print(f"compiled {t_c:8.3f} s  {t_c / total * 1e9:8.1f} ns/step")
    print(f"speed-up {t_py / t_c:.1f}x, max |difference| {diff:.1e}")


if __name__ == "__main__":
    main()
