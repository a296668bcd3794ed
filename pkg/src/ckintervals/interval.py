"""Order intervals ``[f, g] = {h continuous : f <= h <= g}``.

An interval is kept in canonical form ``[f^v, g^^]`` (u.s.c. lower bound,
l.s.c. upper bound).  Emptiness is a flag, not an error, so that algebra on
possibly-empty results composes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyInterval, NotInProduct, NotSigned, PreconditionError, SpaceMismatch
from .space import (
    X0,
    ScalarField,
    check_points,
    constant,
    eq,
    field_div,
    field_max,
    field_min,
    field_mul,
    field_scale,
    field_add,
    fields_equal,
    is_continuous,
    is_lsc,
    is_usc,
    le,
    leq,
    lsc_envelope,
    strictly_negative,
    strictly_positive,
    usc_envelope,
)


@dataclass(frozen=True, eq=False)
class FnInterval:
    lower: ScalarField
    upper: ScalarField
    canonical: bool = False
    empty: bool = False

    @property
    def space(self):
        return self.lower.space

    def __repr__(self):
        tag = "empty " if self.empty else ""
        return f"FnInterval({tag}{self.lower!r}, {self.upper!r})"


@dataclass(frozen=True, eq=False)
class BoundingPair:
    u: ScalarField
    v: ScalarField


def canonicalize(f: ScalarField, g: ScalarField) -> FnInterval:
    if f.space != g.space:
        raise SpaceMismatch(f"{f.space} vs {g.space}")
    lo, hi = usc_envelope(f), lsc_envelope(g)
    return FnInterval(lo, hi, canonical=True, empty=not leq(lo, hi))


def interval(f: ScalarField, g: ScalarField) -> FnInterval:
    return canonicalize(f, g)


def constant_interval(space, a, b) -> FnInterval:
    return canonicalize(constant(space, a), constant(space, b))


def _ensure_canonical(i: FnInterval) -> FnInterval:
    return i if i.canonical else canonicalize(i.lower, i.upper)


def _nonempty(*items: FnInterval) -> None:
    for i in items:
        if i.empty:
            raise EmptyInterval("operation needs a nonempty interval")


def contains(i: FnInterval, h: ScalarField) -> bool:
    i = _ensure_canonical(i)
    if i.space != h.space:
        raise SpaceMismatch(f"{i.space} vs {h.space}")
    if i.empty:
        return False
    return is_continuous(h) and leq(i.lower, h) and leq(h, i.upper)


def interval_equal(a: FnInterval, b: FnInterval) -> bool:
    a, b = _ensure_canonical(a), _ensure_canonical(b)
    if a.empty or b.empty:
        return a.empty and b.empty
    return fields_equal(a.lower, b.lower) and fields_equal(a.upper, b.upper)


def minkowski_sum(i: FnInterval, j: FnInterval) -> FnInterval:
    i, j = _ensure_canonical(i), _ensure_canonical(j)
    _nonempty(i, j)
    return canonicalize(field_add(i.lower, j.lower), field_add(i.upper, j.upper))


def scalar_mul(lam, i: FnInterval) -> FnInterval:
    i = _ensure_canonical(i)
    lam = Fraction(lam) if isinstance(lam, int) else lam
    if i.empty:
        return i
    if lam > 0:
        return canonicalize(field_scale(lam, i.lower), field_scale(lam, i.upper))
    if lam < 0:
        return canonicalize(field_scale(lam, i.upper), field_scale(lam, i.lower))
    z = constant(i.space, 0)
    return canonicalize(z, z)


def neg(i: FnInterval) -> FnInterval:
    return scalar_mul(-1, i)


def real_interval_product(a, b, c, d):
    """``[a, b] * [c, d] = [u, v]`` with ``u``/``v`` the min/max corner product."""
    if a > b or c > d:
        raise PreconditionError(f"malformed intervals [{a}, {b}], [{c}, {d}]")
    corners = (a * c, a * d, b * c, b * d)
    return min(corners), max(corners)


def bounding_pair(i: FnInterval, j: FnInterval) -> BoundingPair:
    i, j = _ensure_canonical(i), _ensure_canonical(j)
    _nonempty(i, j)
    if i.space != j.space:
        raise SpaceMismatch(f"{i.space} vs {j.space}")
    corners = [
        field_mul(i.lower, j.lower),
        field_mul(i.lower, j.upper),
        field_mul(i.upper, j.lower),
        field_mul(i.upper, j.upper),
    ]
    u, v = corners[0], corners[0]
    for c in corners[1:]:
        u = field_min(u, c)
        v = field_max(v, c)
    return BoundingPair(u, v)


def interval_sign(i: FnInterval) -> int:
    """+1 if the lower bound has positive infimum, -1 if the upper bound has
    negative supremum (class limits included), 0 otherwise."""
    i = _ensure_canonical(i)
    if i.empty:
        return 0
    if strictly_positive(i.lower):
        return 1
    if strictly_negative(i.upper):
        return -1
    return 0


_CASES = {(1, 1): "3.1", (1, -1): "3.2", (-1, -1): "3.3", (-1, 1): "3.4"}


def signed_case(i: FnInterval, j: FnInterval) -> str:
    si, sj = interval_sign(i), interval_sign(j)
    if si == 0 or sj == 0:
        raise NotSigned("both operands must be signed", lhs_sign=si, rhs_sign=sj)
    return _CASES[(si, sj)]


def signed_product(i: FnInterval, j: FnInterval) -> FnInterval:
    """Product of two signed intervals, by the matching corner formula."""
    i, j = _ensure_canonical(i), _ensure_canonical(j)
    if i.space != j.space:
        raise SpaceMismatch(f"{i.space} vs {j.space}")
    case = signed_case(i, j)
    f, g, phi, psi = i.lower, i.upper, j.lower, j.upper
    if case == "3.1":
        lo, hi = field_mul(f, phi), field_mul(g, psi)
    elif case == "3.2":
        lo, hi = field_mul(g, phi), field_mul(f, psi)
    elif case == "3.3":
        lo, hi = field_mul(g, psi), field_mul(f, phi)
    else:
        lo, hi = field_mul(f, psi), field_mul(g, phi)
    return canonicalize(lo, hi)


def product_envelope(i: FnInterval, j: FnInterval) -> FnInterval:
    """``[u^v, v^^]`` for the bounding pair.

    When the product is an interval at all, it is this one; whether it is an
    interval is not decided here.
    """
    bp = bounding_pair(i, j)
    return canonicalize(bp.u, bp.v)


def insert_continuous(lam: ScalarField, mu: ScalarField) -> ScalarField:
    """A continuous ``h`` with ``lam <= h <= mu`` for u.s.c. ``lam`` <= l.s.c. ``mu``.

    On AlphaN: ``h(x0) = c`` is the midpoint of ``lam(x0)`` and ``mu(x0)`` and
    every other value is ``c`` clamped into ``[lam, mu]``; semicontinuity
    forces the clamp to be inactive far out (or to converge to ``c``).
    """
    if lam.space != mu.space:
        raise SpaceMismatch(f"{lam.space} vs {mu.space}")
    if not is_usc(lam) or not is_lsc(mu):
        raise PreconditionError("insertion needs u.s.c. lower and l.s.c. upper functions")
    if not leq(lam, mu):
        raise PreconditionError("insertion needs lam <= mu")
    space = lam.space
    if space.is_discrete:
        return field_scale(Fraction(1, 2), field_add(lam, mu))
    c = (lam.x0 + mu.x0) / 2
    h = field_max(lam, field_min(constant(space, c), mu))
    # limits of max(lam, min(c, mu)) already equal c; pin x0 exactly
    return ScalarField(space, h.head, h.pieces, c, h.declared_bound)


def _normalize_sign(i: FnInterval) -> tuple[int, FnInterval]:
    s = interval_sign(i)
    return s, (i if s > 0 else neg(i))


def factor_in_signed_product(i: FnInterval, j: FnInterval, H: ScalarField):
    """Continuous ``(h, eta)`` with ``h in I``, ``eta in J`` and ``h*eta == H``."""
    i, j = _ensure_canonical(i), _ensure_canonical(j)
    prod = signed_product(i, j)
    if not contains(prod, H):
        raise NotInProduct("H is not in the signed product interval")
    si, ip = _normalize_sign(i)
    sj, jp = _normalize_sign(j)
    Hp = field_scale(si * sj, H)
    f, g, phi, psi = ip.lower, ip.upper, jp.lower, jp.upper
    lam = field_max(f, field_div(Hp, psi))
    mu = field_min(g, field_div(Hp, phi))
    hp = insert_continuous(lam, mu)
    etap = field_div(Hp, hp)
    h, eta = field_scale(si, hp), field_scale(sj, etap)
    verify_factorization(i, j, H, h, eta)
    return h, eta


def verify_factorization(i: FnInterval, j: FnInterval, H: ScalarField, h: ScalarField, eta: ScalarField) -> None:
    if not contains(i, h):
        raise AssertionError("factor h left the first interval")
    if not contains(j, eta):
        raise AssertionError("factor eta left the second interval")
    for x in check_points(H, h, eta):
        if not eq(h(x) * eta(x), H(x)):
            raise AssertionError(f"h*eta != H at {x!r}")
    if not H.space.is_discrete and not eq(h(X0) * eta(X0), H(X0)):
        raise AssertionError("h*eta != H at x0")


__all__ = [
    "FnInterval",
    "BoundingPair",
    "canonicalize",
    "interval",
    "constant_interval",
    "contains",
    "interval_equal",
    "minkowski_sum",
    "scalar_mul",
    "neg",
    "real_interval_product",
    "bounding_pair",
    "interval_sign",
    "signed_case",
    "signed_product",
    "product_envelope",
    "insert_continuous",
    "factor_in_signed_product",
    "verify_factorization",
    "le",
]
