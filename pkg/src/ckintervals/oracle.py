"""Brute-force ground truth on small discrete spaces.

On a discrete space every function is continuous, so membership in a
product is a per-point question, answered exactly by feasible-set inversion.
Random instances come from a seeded ``random.Random`` so that reports are
reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import PreconditionError, SpaceMismatch
from .feasible import feasible_factor_values, partner
from .interval import (
    FnInterval,
    bounding_pair,
    canonicalize,
    contains,
    interval_equal,
    minkowski_sum,
    product_envelope,
    real_interval_product,
    signed_case,
    signed_product,
)
from .selector import convex_witness
from .space import (
    ScalarField,
    SpaceModel,
    discrete_field,
    field_add,
    field_mul,
    field_scale,
    seq_field,
)

PROFILES = ("signed+", "signed-", "nonneg", "mixed")
SIGN_PAIRS = {"3.1": ("signed+", "signed+"), "3.2": ("signed+", "signed-"), "3.3": ("signed-", "signed-"), "3.4": ("signed-", "signed+")}


@dataclass(frozen=True)
class GridSpec:
    """``resolution`` points per axis when sampling alternatives or candidates."""

    resolution: int = 5
    seed: int = 0
    trials: int = 100

    def __post_init__(self):
        if self.resolution < 2:
            raise PreconditionError("grid resolution must be at least 2")


def _require_discrete(*items) -> SpaceModel:
    space = items[0].space
    if not space.is_discrete:
        raise PreconditionError("the oracle works on Discrete spaces only")
    for it in items[1:]:
        if it.space != space:
            raise SpaceMismatch(f"{it.space} vs {space}")
    return space


def grid_factor_search(I: FnInterval, J: FnInterval, H: ScalarField, grid: GridSpec | None = None):
    """``(h, eta)`` with ``h in I``, ``eta in J`` and ``h*eta = H``, or ``None``.

    Per point the feasible set is computed exactly; the grid only picks which
    feasible value to use.
    """
    space = _require_discrete(I, J, H)
    if I.empty or J.empty:
        return None
    grid = grid or GridSpec()
    rng = random.Random(grid.seed)
    hs, es = {}, {}
    for x in range(space.size):
        phi, psi, c = J.lower(x), J.upper(x), H(x)
        fs = feasible_factor_values(I.lower(x), I.upper(x), phi, psi, c)
        if fs.empty:
            return None
        lo, hi = fs.intervals[rng.randrange(len(fs.intervals))]
        a = lo + (hi - lo) * Fraction(rng.randrange(grid.resolution), grid.resolution - 1)
        b = partner(a, phi, psi, c)
        if b is None:
            # the interior grid value lost its partner through a degenerate box; fall back to an endpoint
            a = lo
            b = partner(a, phi, psi, c)
        if b is None:
            raise AssertionError(f"feasible set without partner at {x}")
        hs[x], es[x] = a, b
    h, eta = ScalarField(space, hs), ScalarField(space, es)
    if not (contains(I, h) and contains(J, eta)):
        raise AssertionError("oracle witness left its interval")
    return h, eta


# -- random instances -------------------------------------------------------


def _rat(rng: random.Random, lo, hi, den: int = 8) -> Fraction:
    lo, hi = Fraction(lo), Fraction(hi)
    steps = int((hi - lo) * den)
    return lo + Fraction(rng.randint(0, max(steps, 0)), den)


def _lower_value(rng, profile):
    if profile == "signed+":
        return _rat(rng, Fraction(1, 8), 2)
    if profile == "signed-":
        return _rat(rng, -3, Fraction(-1, 4))
    if profile == "nonneg":
        return Fraction(0) if rng.random() < 0.25 else _rat(rng, 0, 2)
    return _rat(rng, -2, 1)


def _width(rng, profile, lower):
    if profile == "signed-":
        # keep the upper bound negative
        return _rat(rng, 0, -lower - Fraction(1, 8)) if lower < Fraction(-1, 8) else Fraction(0)
    return Fraction(0) if rng.random() < 0.1 else _rat(rng, 0, 2)


def random_interval(space: SpaceModel, seed, profile: str = "signed+", continuous: bool = False) -> FnInterval:
    """A canonical interval with rational data matching ``profile``.

    ``signed+``: lower bound positive everywhere (class limits included);
    ``signed-``: upper bound negative; ``nonneg``: lower bound ``>= 0``;
    ``mixed``: ``lower < 0 < upper`` at some point.  ``continuous`` asks for
    continuous bounds on AlphaN.
    """
    if profile not in PROFILES:
        raise PreconditionError(f"unknown profile {profile!r}")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if space.is_discrete:
        lows = [_lower_value(rng, profile) for _ in range(space.size)]
        ups = [lo + _width(rng, profile, lo) for lo in lows]
        if profile == "mixed":
            x = rng.randrange(space.size)
            lows[x] = -_rat(rng, Fraction(1, 8), 2)
            ups[x] = _rat(rng, Fraction(1, 8), 2)
        return canonicalize(discrete_field(space, lows), discrete_field(space, ups))
    lower = _random_seq(space, rng, profile, continuous)
    gap_profile = "nonneg" if profile != "signed-" else "signed-"
    if profile == "signed-":
        # upper = lower * q with q in (0, 1] keeps it negative; lower <= upper
        q = _rat(rng, Fraction(1, 4), 1)
        upper = field_scale(q, lower)
    else:
        gap = _random_seq(space, rng, gap_profile, continuous)
        upper = field_add(lower, gap)
    if profile == "mixed":
        # force a sign change at y_1
        lower = ScalarField(space, {**lower.head, 1: Fraction(-1)}, lower.pieces, lower.x0)
        upper = ScalarField(space, {**upper.head, 1: Fraction(1)}, upper.pieces, upper.x0)
    return canonicalize(lower, upper)


def _random_seq(space: SpaceModel, rng: random.Random, profile: str, continuous: bool) -> ScalarField:
    """Degree-one class polynomials ``c0 + c1/n`` respecting the profile."""
    k = space.k
    base = _lower_value(rng, profile)
    classes = []
    for _ in range(k):
        c0 = base if continuous else _lower_value(rng, profile)
        if profile == "signed+":
            c1 = _rat(rng, -c0 / 2, c0 / 2, 16)
        elif profile == "signed-":
            c1 = _rat(rng, c0 / 2, -c0 / 2, 16)
        elif profile == "nonneg":
            c1 = _rat(rng, 0, 1, 8)
        else:
            c1 = _rat(rng, -1, 1, 8)
        classes.append([c0, c1])
    lims = [c[0] for c in classes]
    # x0 inside the hull of the class limits; canonicalization fixes semicontinuity
    x0 = base if continuous else rng.choice(lims)
    head = {}
    for n in range(1, min(space.m, 6) + 1):
        if rng.random() < 0.3:
            head[n] = _lower_value(rng, profile) if profile != "nonneg" else _rat(rng, 0, 2)
    return seq_field(space, classes, x0=x0, head=head)


def random_sqrt_interval(space: SpaceModel, seed, violate: bool = False) -> FnInterval:
    """``[f, g]`` with ``-g <= f <= 0 < g`` and ``g`` continuous; ``violate``
    breaks ``|f| <= g`` at one point instead."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if space.is_discrete:
        gs = [_rat(rng, Fraction(1, 4), 3) for _ in range(space.size)]
        fs = [-g * _rat(rng, 0, 1) for g in gs]
        if violate:
            x = rng.randrange(space.size)
            fs[x] = -gs[x] - _rat(rng, Fraction(1, 8), 1)
        return canonicalize(discrete_field(space, fs), discrete_field(space, gs))
    c0 = _rat(rng, Fraction(1, 2), 3)
    c1 = _rat(rng, -c0 / 2, c0 / 2, 16)
    g = seq_field(space, [[c0, c1]] * space.k, x0=c0)
    qs = [_rat(rng, 0, 1) for _ in range(space.k)]
    f = seq_field(space, [[-q * c0, -q * c1] for q in qs], x0=-min(qs) * c0)
    if violate:
        n = rng.randint(1, space.m)
        f = ScalarField(space, {n: -g(n) - _rat(rng, Fraction(1, 8), 1)}, f.pieces, f.x0)
    return canonicalize(f, g)


# -- sampling members -------------------------------------------------------


def _sample_between(lo: ScalarField, hi: ScalarField, rng: random.Random) -> ScalarField:
    space = lo.space
    vals = []
    for x in range(space.size):
        s = Fraction(rng.randint(0, 8), 8)
        vals.append(lo(x) + s * (hi(x) - lo(x)))
    return discrete_field(space, vals)


def _push_outside(lo: ScalarField, hi: ScalarField, rng: random.Random) -> ScalarField:
    """Inside at every point but one, where it is strictly above ``hi`` or below ``lo``."""
    H = _sample_between(lo, hi, rng)
    x = rng.randrange(lo.space.size)
    delta = Fraction(rng.randint(1, 16), 16)
    vals = H.values()
    vals[x] = hi(x) + delta if rng.random() < 0.5 else lo(x) - delta
    return discrete_field(lo.space, vals)


# -- reports ----------------------------------------------------------------


def _report(kind, trials, size, seed, checked, failures, **extra):
    out = {
        "check": kind,
        "trials": trials,
        "size": size,
        "seed": seed,
        "checked": checked,
        "discrepancies": len(failures),
        "failures": failures[:10],
    }
    out.update(extra)
    return out


def signed_oracle_check(trials: int, size: int, case: str, seed: int = 0, samples: int = 3) -> dict:
    """Formula interval vs oracle for one sign case: inside members factor,
    outside ones fail at the pushed point."""
    if size > 5:
        raise PreconditionError("oracle spaces have at most 5 points")
    space = SpaceModel("discrete", size)
    rng = random.Random(f"signed:{case}:{size}:{seed}")
    pi, pj = SIGN_PAIRS[case]
    failures, checked = [], 0
    for t in range(trials):
        I = random_interval(space, rng, pi)
        J = random_interval(space, rng, pj)
        got = signed_case(I, J)
        P = signed_product(I, J)
        if got != case or not interval_equal(P, product_envelope(I, J)):
            failures.append({"trial": t, "reason": "formula/envelope mismatch"})
            continue
        grid = GridSpec(seed=t)
        members = [P.lower, P.upper] + [_sample_between(P.lower, P.upper, rng) for _ in range(samples)]
        for H in members:
            checked += 1
            if grid_factor_search(I, J, H, grid) is None:
                failures.append({"trial": t, "reason": "inside member has no factorization", "H": _vals(H)})
        for _ in range(samples):
            checked += 1
            H = _push_outside(P.lower, P.upper, rng)
            if grid_factor_search(I, J, H, grid) is not None:
                failures.append({"trial": t, "reason": "outside member factored", "H": _vals(H)})
    return _report("signed", trials, size, seed, checked, failures, case=case)


def sum_oracle_check(trials: int, size: int = 4, seed: int = 0, samples: int = 3) -> dict:
    """Minkowski sum both ways: sums of members land in ``[f+phi, g+psi]`` and
    every sampled member of it splits per point; pushed-out targets do not."""
    space = SpaceModel("discrete", size)
    rng = random.Random(f"sum:{size}:{seed}")
    failures, checked = [], 0
    for t in range(trials):
        I = random_interval(space, rng, rng.choice(PROFILES))
        J = random_interval(space, rng, rng.choice(PROFILES))
        S = minkowski_sum(I, J)
        for _ in range(samples):
            checked += 1
            h = _sample_between(I.lower, I.upper, rng)
            eta = _sample_between(J.lower, J.upper, rng)
            if not contains(S, field_add(h, eta)):
                failures.append({"trial": t, "reason": "sum of members escapes"})
        for _ in range(samples):
            checked += 1
            H = _sample_between(S.lower, S.upper, rng)
            if split_sum(I, J, H) is None:
                failures.append({"trial": t, "reason": "member does not split", "H": _vals(H)})
            checked += 1
            H = _push_outside(S.lower, S.upper, rng)
            if split_sum(I, J, H) is not None:
                failures.append({"trial": t, "reason": "outside target split", "H": _vals(H)})
    return _report("sum", trials, size, seed, checked, failures)


def split_sum(I: FnInterval, J: FnInterval, H: ScalarField):
    """``(h, eta)`` with ``h in I``, ``eta in J``, ``h + eta = H``, or ``None``."""
    space = _require_discrete(I, J, H)
    hs, es = [], []
    for x in range(space.size):
        lo = max(I.lower(x), H(x) - J.upper(x))
        hi = min(I.upper(x), H(x) - J.lower(x))
        if lo > hi:
            return None
        hs.append(lo)
        es.append(H(x) - lo)
    return discrete_field(space, hs), discrete_field(space, es)


def convexity_oracle_check(trials: int, space: SpaceModel, seed: int = 0) -> dict:
    """Nonnegative pairs: the selector factors a convex combination of two
    products; on Discrete spaces the oracle must agree."""
    rng = random.Random(f"convex:{space}:{seed}")
    failures = []
    for t in range(trials):
        I = random_interval(space, rng, "nonneg", continuous=True)
        J = random_interval(space, rng, "nonneg", continuous=True)
        fac1 = _member_pair(I, J, rng)
        fac2 = _member_pair(I, J, rng)
        w = Fraction(rng.randint(1, 15), 16)
        try:
            h, eta = convex_witness(I, J, fac1, fac2, w)
        except AssertionError as exc:
            failures.append({"trial": t, "reason": str(exc)})
            continue
        if space.is_discrete:
            H = field_add(field_scale(1 - w, field_mul(*fac1)), field_scale(w, field_mul(*fac2)))
            if grid_factor_search(I, J, H) is None:
                failures.append({"trial": t, "reason": "oracle finds no factorization"})
    return _report("convexity", trials, space.size, seed, trials, failures, space=str(space))


def _member_pair(I: FnInterval, J: FnInterval, rng: random.Random):
    def member(K: FnInterval):
        s = Fraction(rng.randint(0, 8), 8)
        return field_add(field_scale(1 - s, K.lower), field_scale(s, K.upper))

    return member(I), member(J)


def mixed_oracle_check(trials: int, size: int, seed: int = 0, samples: int = 3) -> dict:
    """Mixed-sign pairs.  The naive corner formula ``[f*phi, g*psi]`` is
    compared with the oracle (it is expected to disagree), and members of
    the envelope ``[u, v]`` are factored (on a discrete space they always are).
    """
    space = SpaceModel("discrete", size)
    rng = random.Random(f"mixed:{size}:{seed}")
    failures, naive_wrong, checked = [], 0, 0
    for t in range(trials):
        I = random_interval(space, rng, "mixed")
        J = random_interval(space, rng, rng.choice(PROFILES))
        bp = bounding_pair(I, J)
        naive_lo, naive_hi = field_mul(I.lower, J.lower), field_mul(I.upper, J.upper)
        if not (interval_equal(canonicalize(naive_lo, naive_hi), canonicalize(bp.u, bp.v))):
            naive_wrong += 1
        members = [bp.u, bp.v] + [_sample_between(bp.u, bp.v, rng) for _ in range(samples)]
        for H in members:
            checked += 1
            if grid_factor_search(I, J, H, GridSpec(seed=t)) is None:
                failures.append({"trial": t, "reason": "envelope member has no factorization", "H": _vals(H)})
    return _report("mixed", trials, size, seed, checked, failures, naive_formula_discrepancies=naive_wrong)


def formula_vs_oracle(trials: int, space_size: int, profile: str, seed: int = 0) -> dict:
    """Dispatch on profile: ``signed+``/``signed-`` (or a case label such as
    ``"3.2"``), ``nonneg`` and ``mixed``."""
    if not 1 <= space_size <= 5:
        raise PreconditionError("oracle spaces have 1 to 5 points")
    if profile in SIGN_PAIRS:
        return signed_oracle_check(trials, space_size, profile, seed)
    if profile == "signed+":
        return signed_oracle_check(trials, space_size, "3.1", seed)
    if profile == "signed-":
        return signed_oracle_check(trials, space_size, "3.3", seed)
    if profile == "nonneg":
        return convexity_oracle_check(trials, SpaceModel("discrete", space_size), seed)
    if profile == "mixed":
        return mixed_oracle_check(trials, space_size, seed)
    raise PreconditionError(f"unknown profile {profile!r}")


def _vals(H: ScalarField):
    return [str(v) for v in H.values()]


# -- real intervals ---------------------------------------------------------


def random_real_pairs(count: int, seed: int = 0, den: int = 64, span: int = 8):
    rng = random.Random(f"real:{seed}")
    out = []
    for _ in range(count):
        a, b = sorted(Fraction(rng.randint(-span * den, span * den), den) for _ in range(2))
        c, d = sorted(Fraction(rng.randint(-span * den, span * den), den) for _ in range(2))
        out.append((a, b, c, d))
    return out


def real_product_check(count: int = 10_000, res: int = 1000, seed: int = 0, exact_res: int = 9, exact_count: int = 200) -> dict:
    """Corner formula vs a dense float grid, then vs an exact rational grid."""
    pairs = random_real_pairs(count, seed)
    arr = np.array([[float(v) for v in p] for p in pairs])
    glo, ghi = _kernels.grid_product_extrema(arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3], res)
    max_err = 0.0
    for (a, b, c, d), lo, hi in zip(pairs, glo, ghi):
        u, v = real_interval_product(a, b, c, d)
        max_err = max(max_err, abs(float(u) - lo), abs(float(v) - hi))
    exact_bad = 0
    for a, b, c, d in pairs[:exact_count]:
        xs = [a + (b - a) * Fraction(i, exact_res - 1) for i in range(exact_res)]
        ys = [c + (d - c) * Fraction(j, exact_res - 1) for j in range(exact_res)]
        prods = [x * y for x in xs for y in ys]
        if (min(prods), max(prods)) != real_interval_product(a, b, c, d):
            exact_bad += 1
    return {
        "check": "real-product",
        "pairs": count,
        "resolution": res,
        "max_abs_error": max_err,
        "exact_pairs": min(exact_count, count),
        "exact_mismatches": exact_bad,
        "backend": "numba" if _kernels.USE_NUMBA else "numpy",
    }
