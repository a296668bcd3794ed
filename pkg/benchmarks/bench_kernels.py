"""Compare the numba and numpy kernels.

    python3 benchmarks/bench_kernels.py [--rows 200000] [--pairs 200] [--res 1000]

Each kernel is warmed up once (numba compiles on first call) and then timed
as the best of ``--repeat`` runs.  Outputs are checked for agreement.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ckintervals import _kernels as K


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=200_000, help="selector batch size")
    ap.add_argument("--pairs", type=int, default=200, help="interval pairs for the grid kernel")
    ap.add_argument("--res", type=int, default=1000, help="grid points per axis")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(args.seed)
    z = rng.uniform(0, 10, size=(args.rows, 4))
    z[rng.random(z.shape) < 0.1] = 0.0
    t = rng.uniform(1e-6, 1 - 1e-6, size=args.rows)
    ab = np.sort(rng.uniform(-8, 8, size=(args.pairs, 2)), axis=1)
    cd = np.sort(rng.uniform(-8, 8, size=(args.pairs, 2)), axis=1)

    rows = []
    tn, pn = best_of(lambda: K.selector_batch_numba(z, t), args.repeat)
    tp, pp = best_of(lambda: K.selector_batch_numpy(z, t), args.repeat)
    rows.append(("selector", f"{args.rows} rows", tn, tp, float(np.max(np.abs(pn - pp)))))

    grid_args = (ab[:, 0].copy(), ab[:, 1].copy(), cd[:, 0].copy(), cd[:, 1].copy(), args.res)
    tn, gn = best_of(lambda: K.grid_product_extrema_numba(*grid_args), args.repeat)
    tp, gp = best_of(lambda: K.grid_product_extrema_numpy(*grid_args), args.repeat)
    diff = max(float(np.max(np.abs(gn[0] - gp[0]))), float(np.max(np.abs(gn[1] - gp[1]))))
    rows.append(("grid extrema", f"{args.pairs} x {args.res}^2", tn, tp, diff))

    print(f"{'kernel':<14}{'size':<18}{'numba s':>10}{'numpy s':>10}{'speedup':>9}{'max diff':>11}")
    for name, size, a, b, d in rows:
        print(f"{name:<14}{size:<18}{a:>10.4f}{b:>10.4f}{b / a:>8.1f}x{d:>11.2e}")


if __name__ == "__main__":
    main()
