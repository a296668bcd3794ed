"""Float hot loops: batched selector and dense-grid product extrema.

Each kernel exists twice, as a numba ``@njit`` loop and as a vectorised numpy
expression.  ``CKINTERVALS_NUMBA=0`` in the environment selects the numpy
path (it is also used automatically when numba cannot be imported).  Both
paths are importable directly for comparison.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("CKINTERVALS_NUMBA", "1") != "0"


# -- selector ----------------------------------------------------------------


def selector_batch_numpy(z: np.ndarray, t: np.ndarray) -> np.ndarray:
    """Vectorised selector: rows ``z = (a, alpha, b, beta)``, weights ``t``."""
    a, al, b, be = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    s = 1.0 - t
    sa = s * a + t * b
    sal = s * al + t * be
    w = s * a * al + t * b * be
    out = np.zeros((z.shape[0], 2))
    gen = (sa > 0) & (sal > 0)
    # C1 - C2 simplifies to sa - sal, so no cancellation through A, B, C
    delta = sa - sal
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.sqrt(delta * delta + 4.0 * w)
        # cancellation-free: the larger coordinate directly, the other as w / it
        big = 0.5 * (np.abs(delta) + root)
        small = np.where(big > 0, w / big, 0.0)
    x = np.where(delta >= 0, big, small)
    y = np.where(delta >= 0, small, big)
    out[:, 0] = np.where(gen, x, np.where(sa == 0, 0.0, sa))
    out[:, 1] = np.where(gen, y, np.where(sa == 0, sal, 0.0))
    return out


def _selector_row(a, al, b, be, t):
    s = 1.0 - t
    sa = s * a + t * b
    sal = s * al + t * be
    if sa == 0.0:
        return 0.0, sal
    if sal == 0.0:
        return sa, 0.0
    w = s * a * al + t * b * be
    delta = sa - sal
    root = np.sqrt(delta * delta + 4.0 * w)
    big = 0.5 * (abs(delta) + root)
    small = w / big if big > 0.0 else 0.0
    if delta >= 0.0:
        return big, small
    return small, big


if HAVE_NUMBA:
    _selector_row_jit = numba.njit(cache=True)(_selector_row)

    @numba.njit(cache=True)
    def selector_batch_numba(z, t):
        n = z.shape[0]
        out = np.empty((n, 2))
        for i in range(n):
            x, y = _selector_row_jit(z[i, 0], z[i, 1], z[i, 2], z[i, 3], t[i])
            out[i, 0] = x
            out[i, 1] = y
        return out
else:  # pragma: no cover
    selector_batch_numba = None


def selector_batch(z, t) -> np.ndarray:
    z = np.ascontiguousarray(z, dtype=np.float64)
    t = np.ascontiguousarray(np.broadcast_to(t, (z.shape[0],)), dtype=np.float64)
    if USE_NUMBA:
        return selector_batch_numba(z, t)
    return selector_batch_numpy(z, t)


# -- dense grid product extrema ---------------------------------------------


def grid_product_extrema_numpy(a, b, c, d, res: int):
    """Min/max of ``x*y`` over a ``res x res`` grid on ``[a,b] x [c,d]`` (per row)."""
    a, b, c, d = (np.asarray(v, dtype=np.float64) for v in (a, b, c, d))
    s = np.linspace(0.0, 1.0, res)
    lo = np.empty(a.shape[0])
    hi = np.empty(a.shape[0])
    for i in range(a.shape[0]):
        xs = a[i] + (b[i] - a[i]) * s
        ys = c[i] + (d[i] - c[i]) * s
        prod = np.multiply.outer(xs, ys)
        lo[i] = prod.min()
        hi[i] = prod.max()
    return lo, hi


if HAVE_NUMBA:

    @numba.njit(cache=True, fastmath=False)
    def grid_product_extrema_numba(a, b, c, d, res):
        n = a.shape[0]
        lo = np.empty(n)
        hi = np.empty(n)
        ys = np.empty(res)
        for i in range(n):
            for q in range(res):
                ys[q] = c[i] + (d[i] - c[i]) * (q / (res - 1))
            mn = np.inf
            mx = -np.inf
            for p in range(res):
                x = a[i] + (b[i] - a[i]) * (p / (res - 1))
                for q in range(res):
                    v = x * ys[q]
                    mn = min(mn, v)
                    mx = max(mx, v)
            lo[i] = mn
            hi[i] = mx
        return lo, hi
else:  # pragma: no cover
    grid_product_extrema_numba = None


def grid_product_extrema(a, b, c, d, res: int = 1000):
    arrs = [np.ascontiguousarray(v, dtype=np.float64) for v in (a, b, c, d)]
    if USE_NUMBA:
        return grid_product_extrema_numba(*arrs, int(res))
    return grid_product_extrema_numpy(*arrs, int(res))
