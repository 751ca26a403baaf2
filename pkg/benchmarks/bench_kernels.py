"""Benchmark the hot kernels on both backends (numba-compiled vs pure numpy).

Each backend runs in its own subprocess because the backend is chosen at
import time from TOEPISO_NUMBA.  Compilation happens in a warmup pass and is
excluded from the timings.

Usage:
    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 4 8 16]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _worker(sizes, repeat):
    import numpy as np

    import toepiso as tp

    rng = np.random.default_rng(0)
    results = {"backend": tp.backend_name(), "timings": {}}

    def best_of(fn, *args):
        fn(*args)  # warmup (includes jit compilation on the numba path)
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn(*args)
            best = min(best, time.perf_counter() - t0)
        return best

    for n in sizes:
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        H = A + A.conj().T
        results["timings"][f"svd n={n}"] = best_of(tp.svd_values, A)
        results["timings"][f"eigh n={n}"] = best_of(tp.hermitian_eigs, H)
        results["timings"][f"radius n={n} (grid 256)"] = best_of(
            lambda M: tp.numerical_radius(M, grid=256, refine_iters=40), A
        )

    n = max(sizes)
    U0 = tp.haar_unitary(n, rng)
    V0 = tp.haar_unitary(n, rng)
    phi = tp.synthesize_isometry(U0, V0)
    results["timings"][f"factor_isometry n={n}"] = best_of(tp.factor_isometry, phi)

    print(json.dumps(results))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", type=int, nargs="+", default=[4, 8, 16])
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.worker:
        _worker(args.sizes, args.repeat)
        return

    runs = {}
    for flag, label in (("1", "numba"), ("0", "numpy")):
        env = dict(os.environ, TOEPISO_NUMBA=flag)
        cmd = [sys.executable, __file__, "--worker", "--repeat", str(args.repeat),
               "--sizes", *map(str, args.sizes)]
        out = subprocess.run(cmd, env=env, capture_output=True, text=True)
        if out.returncode != 0:
            sys.stderr.write(out.stderr)
            raise SystemExit(f"{label} worker failed")
        runs[label] = json.loads(out.stdout.strip().splitlines()[-1])

    names = list(runs["numba"]["timings"])
    width = max(map(len, names))
    print(f"{'kernel':<{width}}  {'numba':>12}  {'numpy':>12}  {'speedup':>8}")
    for name in names:
        tn = runs["numba"]["timings"][name]
        tp_ = runs["numpy"]["timings"][name]
        print(f"{name:<{width}}  {tn * 1e6:>10.1f}us  {tp_ * 1e6:>10.1f}us  {tp_ / tn:>7.1f}x")


if __name__ == "__main__":
    main()
