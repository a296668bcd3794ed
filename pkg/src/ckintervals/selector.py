"""Continuous selection of a point in ``Rec(z) & Hyp(z)``.

For ``z = (a, alpha, b, beta)`` in the nonnegative orthant and weight ``t``,
``Rec(z)`` is the axis-parallel rectangle with opposite corners
``(a, alpha)`` and ``(b, beta)`` and ``Hyp(z)`` is ``{c*gamma = w}`` with
``w = (1-t)*a*alpha + t*b*beta``.  The selected point lies on the line of
slope one through the weighted average ``C`` of the two "axis" points ``A``
(average ``alpha``) and ``B`` (average ``a``).  Applied pointwise to two
factorizations ``H_i = h_i * eta_i`` it factors their convex combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError, SpaceMismatch
from .exact import exact_sqrt, is_exact, sign
from .interval import FnInterval, contains
from .space import (
    X0,
    EvalTail,
    ScalarField,
    check_points,
    eq,
    field_inf,
    is_continuous,
    le,
)

REL_TOL = 1e-9


@dataclass(frozen=True)
class QuadZ:
    a: object
    alpha: object
    b: object
    beta: object
    t: object

    def __post_init__(self):
        if min(self.a, self.alpha, self.b, self.beta) < 0:
            raise PreconditionError("selector inputs must be nonnegative")
        if not 0 < self.t < 1:
            raise PreconditionError("selector weight must lie in (0, 1)")

    @property
    def w(self):
        t = self.t
        return (1 - t) * self.a * self.alpha + t * self.b * self.beta


@dataclass(frozen=True)
class SelectorTrace:
    rect: tuple
    w: object
    A: tuple | None
    B: tuple | None
    C: tuple | None
    tau: object
    result: tuple
    case: str
    roots_in_rect: int = 1


def in_rect(point, rect, exact: bool = True) -> bool:
    (x0, x1), (y0, y1) = rect
    x, y = point
    if exact:
        return x0 <= x <= x1 and y0 <= y <= y1
    slack = REL_TOL * (1 + max(float(x1 - x0), float(y1 - y0)))
    return (
        float(x0) - slack <= float(x) <= float(x1) + slack
        and float(y0) - slack <= float(y) <= float(y1) + slack
    )


def selector_P(z: QuadZ):
    """Return ``(P(z), trace)``.

    Rational inputs give an exact answer (coordinates in a quadratic field);
    float inputs use a cancellation-free root.
    """
    a, al, b, be, t = z.a, z.alpha, z.b, z.beta, z.t
    exact = all(is_exact(v) for v in (a, al, b, be, t))
    rect = ((min(a, b), max(a, b)), (min(al, be), max(al, be)))
    s = 1 - t
    sa = s * a + t * b
    sal = s * al + t * be
    w = z.w
    if a == 0 and b == 0:
        p = (0 * sal, sal)
        return p, SelectorTrace(rect, w, None, None, None, None, p, "a=b=0")
    if al == 0 and be == 0:
        p = (sa, 0 * sa)
        return p, SelectorTrace(rect, w, None, None, None, None, p, "alpha=beta=0")
    A = (w / sal, sal)
    B = (sa, w / sa)
    den = sal + sa
    C = ((sal * A[0] + sa * B[0]) / den, (sal * A[1] + sa * B[1]) / den)
    # (C1 + tau)(C2 + tau) = w  <=>  tau^2 + (C1 + C2) tau + C1 C2 - w = 0
    delta = C[0] - C[1]
    disc = delta * delta + 4 * w
    if exact:
        root = exact_sqrt(disc)
        cands = [((delta + root) / 2, (-delta + root) / 2), ((delta - root) / 2, (-delta - root) / 2)]
    else:
        root = float(disc) ** 0.5
        big = 0.5 * (abs(delta) + root)
        small = w / big if big > 0 else 0.0
        plus = (big, small) if delta >= 0 else (small, big)
        cands = [plus, (0.5 * (delta - root), 0.5 * (-delta - root))]
    taus = [c[0] - C[0] for c in cands]
    inside = [in_rect(c, rect, exact) for c in cands]
    n_in = sum(inside)
    if n_in == 1:
        i = inside.index(True)
    else:
        # both (or, through rounding, neither): take the larger tau
        i = 0 if taus[0] >= taus[1] else 1
    p = cands[i]
    return p, SelectorTrace(rect, w, A, B, C, taus[i], p, "general", n_in)


def selector_point(a, alpha, b, beta, t):
    return selector_P(QuadZ(a, alpha, b, beta, t))[0]


# ---------------------------------------------------------------------------
# fields


def _selector_fields(fields, t):
    h1, e1, h2, e2 = fields
    space = h1.space
    for f in fields[1:]:
        if f.space != space:
            raise SpaceMismatch(f"{f.space} vs {space}")

    def at(vals):
        return selector_point(vals[0], vals[1], vals[2], vals[3], t)

    if space.is_discrete:
        pts = {i: at([f.head[i] for f in fields]) for i in range(space.size)}
        return (
            ScalarField(space, {i: p[0] for i, p in pts.items()}),
            ScalarField(space, {i: p[1] for i, p in pts.items()}),
        )
    head_keys = set().union(*(f.head for f in fields))
    head = {n: at([f.tail_value(n) for f in fields]) for n in head_keys}
    starts = sorted(set().union(*(f._starts for f in fields)))
    pieces_h, pieces_e = [], []
    for i, s in enumerate(starts):
        rules = [f.rule_at(s) for f in fields]
        fn = lru_cache(maxsize=8192)(lambda n, rules=rules: at([r.value(n) for r in rules]))
        limits_h = limits_e = None
        if i + 1 == len(starts):
            lims = [at([r.limit(c) for r in rules]) for c in range(space.k)]
            limits_h = tuple(p[0] for p in lims)
            limits_e = tuple(p[1] for p in lims)
        pieces_h.append((s, EvalTail(lambda n, fn=fn: fn(n)[0], limits_h)))
        pieces_e.append((s, EvalTail(lambda n, fn=fn: fn(n)[1], limits_e)))
    p0 = at([f.x0 for f in fields])
    return (
        ScalarField(space, {n: p[0] for n, p in head.items()}, tuple(pieces_h), p0[0]),
        ScalarField(space, {n: p[1] for n, p in head.items()}, tuple(pieces_e), p0[1]),
    )


def midpoint_factorization(h1, eta1, h2, eta2, t):
    """Continuous ``(h, eta)`` with ``h*eta = (1-t) h1 eta1 + t h2 eta2``.

    Pointwise ``(h, eta)`` stays in the rectangle spanned by ``(h1, eta1)``
    and ``(h2, eta2)``, so any boxes containing both factorizations contain it.
    """
    fields = (h1, eta1, h2, eta2)
    for f in fields:
        if sign(field_inf(f)) < 0:
            raise PreconditionError("midpoint factorization needs nonnegative fields")
        if not is_continuous(f):
            raise PreconditionError("midpoint factorization needs continuous fields")
    if not 0 < t < 1:
        raise PreconditionError("t must lie in (0, 1)")
    return _selector_fields(fields, t)


def convex_witness(I: FnInterval, J: FnInterval, fac1, fac2, t):
    """Witness ``(h, eta)`` that ``(1-t) H1 + t H2`` lies in ``I * J``.

    ``fac1 = (h1, eta1)`` and ``fac2 = (h2, eta2)`` are factorizations of
    ``H1`` and ``H2`` with factors in ``I`` and ``J`` respectively.
    """
    (h1, e1), (h2, e2) = fac1, fac2
    for h in (h1, h2):
        if not contains(I, h):
            raise PreconditionError("first factor is not in I")
    for e in (e1, e2):
        if not contains(J, e):
            raise PreconditionError("second factor is not in J")
    h, eta = midpoint_factorization(h1, e1, h2, e2, t)
    check_convex_witness(I, J, fac1, fac2, t, h, eta)
    return h, eta


def check_convex_witness(I, J, fac1, fac2, t, h, eta) -> None:
    (h1, e1), (h2, e2) = fac1, fac2
    pts = check_points(h1, e1, h2, e2)
    if not I.space.is_discrete and X0 not in pts:
        pts.append(X0)
    for x in pts:
        target = (1 - t) * h1(x) * e1(x) + t * h2(x) * e2(x)
        if not eq(h(x) * eta(x), target):
            raise AssertionError(f"product contract fails at {x!r}")
        if not (le(min(h1(x), h2(x)), h(x)) and le(h(x), max(h1(x), h2(x)))):
            raise AssertionError(f"h leaves the box at {x!r}")
        if not (le(min(e1(x), e2(x)), eta(x)) and le(eta(x), max(e1(x), e2(x)))):
            raise AssertionError(f"eta leaves the box at {x!r}")
    if not contains(I, h):
        raise AssertionError("h is not in I")
    if not contains(J, eta):
        raise AssertionError("eta is not in J")


def demo_rows(grid: int = 5, ts=(Fraction(1, 4), Fraction(1, 2), Fraction(3, 4))):
    """Sample the selector on ``{0, 1/(grid-1), ..., 1}^4`` for the CLI demo."""
    vals = [Fraction(i, grid - 1) for i in range(grid)]
    rows = []
    for t in ts:
        for a in vals:
            for al in vals:
                for b in vals:
                    for be in vals:
                        z = QuadZ(a, al, b, be, t)
                        p, tr = selector_P(z)
                        resid = p[0] * p[1] - z.w
                        rows.append(
                            {
                                "a": a,
                                "alpha": al,
                                "b": b,
                                "beta": be,
                                "t": t,
                                "P1": p[0],
                                "P2": p[1],
                                "product_residual": resid,
                                "in_rect": in_rect(p, tr.rect),
                                "case": tr.case,
                            }
                        )
    return rows
