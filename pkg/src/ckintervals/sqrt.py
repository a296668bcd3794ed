"""Square roots of real and function intervals.

``C`` is a square root of ``[f, g]`` when ``C * C = [f, g]``.  For real
intervals there is one iff ``|a| <= b``; for function intervals that
pointwise condition is necessary, and together with ``-g <= f <= 0 < g`` and
continuity of ``g`` it is sufficient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import NoSquareRoot, PreconditionError
from .exact import exact_sqrt, sign
from .feasible import feasible_factor_values, partner
from .interval import FnInterval, bounding_pair, canonicalize, contains, insert_continuous, scalar_mul
from .space import (
    X0,
    ScalarField,
    check_points,
    constant,
    eq,
    field_add,
    field_div,
    field_extremes,
    field_inf,
    field_scale,
    field_sqrt,
    field_sub,
    fields_equal,
    is_continuous,
    leq,
    lsc_envelope,
    strictly_positive,
    usc_envelope,
)


@dataclass(frozen=True)
class SqrtPair:
    principal: object
    mirrored: object


def real_sqrt_roots(a, b) -> SqrtPair:
    """Both interval square roots of the real interval ``[a, b]``."""
    if a > b:
        raise PreconditionError(f"malformed interval [{a}, {b}]")
    if sign(b) < 0 or -a > b:
        raise NoSquareRoot(f"[{a}, {b}] has no interval square root", point=None, a=a, b=b)
    if sign(a) >= 0:
        lo, hi = exact_sqrt(a), exact_sqrt(b)
    else:
        hi = exact_sqrt(b)
        lo = a / hi
    return SqrtPair((lo, hi), (-hi, -lo))


def _violation_point(d: ScalarField):
    """First point where ``d < 0``; assumes such a point exists."""
    for x in check_points(d):
        if sign(d(x)) < 0:
            return x
    if d.space.is_discrete:
        return None
    # a negative class limit is eventually matched by negative values
    n = 1
    while n < 10**7:
        if sign(d(n)) < 0:
            return n
        n += 1
    return None


def necessity_check(I: FnInterval):
    """``(ok, point)``: ``upper >= 0`` and ``|lower| <= upper`` everywhere.

    ``point`` is the first violating point found (``None`` when ``ok``).
    """
    f, g = I.lower, I.upper
    for d in (field_sub(g, f), field_add(g, f)):
        if sign(field_inf(d)) < 0:
            return False, _violation_point(d)
    return True, None


def sqrt_branch(I: FnInterval) -> int:
    f, g = I.lower, I.upper
    if sign(field_inf(f)) >= 0:
        return 1
    ok, point = necessity_check(I)
    if not ok:
        raise NoSquareRoot("necessity fails: need upper >= 0 and |lower| <= upper", point=point)
    if sign(field_extremes(f)[1]) > 0:
        raise PreconditionError("mixed-sign lower bound is outside both sufficient branches")
    if not is_continuous(g):
        raise PreconditionError("upper bound is only semicontinuous; no interval root is guaranteed")
    if not strictly_positive(g):
        raise PreconditionError("upper bound must be bounded away from 0")
    return 2


def interval_sqrt(I: FnInterval) -> SqrtPair:
    """Interval square roots of a canonical interval.

    Nonnegative lower bound: ``[sqrt f, sqrt g]``.  Otherwise (with
    ``-g <= f <= 0 < g`` and ``g`` continuous): ``[f / sqrt g, sqrt g]``.
    """
    if I.empty:
        raise PreconditionError("empty interval")
    f, g = I.lower, I.upper
    if sqrt_branch(I) == 1:
        principal = canonicalize(field_sqrt(f), field_sqrt(g))
    else:
        root = field_sqrt(g)
        principal = canonicalize(field_div(f, root), root)
    return SqrtPair(principal, scalar_mul(-1, principal))


@dataclass
class SquareReport:
    passed: bool
    checks: dict = field(default_factory=dict)
    counterexample: object = None

    def to_json(self):
        out = {"passed": self.passed, "checks": self.checks}
        if self.counterexample is not None:
            out["counterexample"] = str(self.counterexample)
        return out


def _blend(f: ScalarField, g: ScalarField, s) -> ScalarField:
    return field_add(field_scale(1 - s, f), field_scale(s, g))


def _members(I: FnInterval, rng: random.Random, count: int):
    """Continuous members of ``I``: blends of continuous bounds, or an inserted function."""
    f, g = I.lower, I.upper
    if is_continuous(f) and is_continuous(g):
        ss = [Fraction(0), Fraction(1)] + [Fraction(rng.randint(1, 99), 100) for _ in range(count)]
        return [_blend(f, g, s) for s in ss]
    return [insert_continuous(f, g)]


def _factor_in_root(C: FnInterval, H: ScalarField):
    """Write ``H = h * eta`` with ``h, eta in C``."""
    space = H.space
    phi, psi = C.lower, C.upper
    if space.is_discrete:
        hs, es = {}, {}
        for x in range(space.size):
            fs = feasible_factor_values(phi(x), psi(x), phi(x), psi(x), H(x))
            if fs.empty:
                return None
            a = fs.intervals[0][0]
            b = partner(a, phi(x), psi(x), H(x))
            if b is None:
                return None
            hs[x], es[x] = a, b
        return ScalarField(space, hs), ScalarField(space, es)
    if sign(field_inf(H)) >= 0 and sign(field_inf(phi)) >= 0:
        h = field_sqrt(H)
        return h, h
    # one factor pinned to the upper bound, the other absorbs H
    if not strictly_positive(psi):
        return None
    return psi, field_div(H, psi)


def verify_square(C: FnInterval, I: FnInterval, samples: int = 4, seed: int = 0, tol: float = 0.0) -> SquareReport:
    """Check ``C * C == I``: envelope equality of the bounding pair plus
    two-sided membership sampling."""
    rng = random.Random(seed)
    checks = {}
    bp = bounding_pair(C, C)
    lo_ok = fields_equal(usc_envelope(bp.u), I.lower, tol)
    hi_ok = fields_equal(lsc_envelope(bp.v), I.upper, tol)
    checks["envelope_lower"] = lo_ok
    checks["envelope_upper"] = hi_ok
    if not (lo_ok and hi_ok):
        bad = bp.u if not lo_ok else bp.v
        ref = I.lower if not lo_ok else I.upper
        point = next((x for x in check_points(bad, ref) if not eq(bad(x), ref(x), tol)), None)
        return SquareReport(False, checks, point)

    factor_ok = True
    counter = None
    for H in _members(I, rng, samples):
        fac = _factor_in_root(C, H)
        if fac is None or not (contains(C, fac[0]) and contains(C, fac[1])):
            factor_ok, counter = False, "factorization"
            break
        h, eta = fac
        bad = next((x for x in check_points(H, h, eta) if not eq(h(x) * eta(x), H(x), tol)), None)
        if bad is not None:
            factor_ok, counter = False, bad
            break
    checks["factor_members"] = factor_ok

    prod_ok = True
    members = _members(C, rng, samples)
    for _ in range(samples):
        h, eta = rng.choice(members), rng.choice(members)
        P = h * eta
        if not (leq(I.lower, P, tol) and leq(P, I.upper, tol)):
            prod_ok = False
            counter = counter or "product"
            break
    checks["products_inside"] = prod_ok
    return SquareReport(factor_ok and prod_ok, checks, counter)


def hull_sqrt_factor(H: ScalarField, x0):
    """Factor ``H`` in ``[-1, 1]`` through the convex hull of
    ``{h in [-1, 1] : h(x0) >= 0}`` and ``{-1}``.

    Returns ``(H, 1)`` when ``H(x0) >= 0`` and ``(-H, -1)`` otherwise.
    """
    space = H.space
    unit = canonicalize(constant(space, -1), constant(space, 1))
    if not contains(unit, H):
        raise PreconditionError("H must lie in the unit interval [-1, 1]")
    if x0 != X0 and not space.contains_point(x0):
        raise PreconditionError(f"{x0!r} is not a point of {space}")
    if sign(H(x0)) >= 0:
        return H, constant(space, 1)
    return field_scale(-1, H), constant(space, -1)
