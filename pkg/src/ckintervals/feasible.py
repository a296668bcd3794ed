"""Per-point inversion: which first factors ``a`` admit a partner ``b``?

Everything here is generic over ordered fields -- Fraction, Surd and Germ
all work, which is how the same code produces concrete per-index sets and
their asymptotic (germ) form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exact import format_number, sign


def _key(x):
    # sort key usable across Fraction / Surd / Germ without float rounding
    return x


@dataclass(frozen=True)
class FeasibleSet:
    """Finite union of disjoint closed intervals ``(lo, hi)``, sorted.

    ``whole`` marks the case "every ``a`` in the box works" (a vanishing
    target with ``0`` in the partner box).
    """

    intervals: tuple = ()
    whole: bool = False

    @classmethod
    def of(cls, intervals, whole: bool = False) -> "FeasibleSet":
        ivs = sorted((iv for iv in intervals if iv[0] <= iv[1]), key=lambda iv: _key(iv[0]))
        merged: list = []
        for lo, hi in ivs:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1] = (merged[-1][0], hi)
            else:
                merged.append((lo, hi))
        return cls(tuple(merged), whole)

    @property
    def empty(self) -> bool:
        return not self.intervals

    def __contains__(self, a) -> bool:
        return any(lo <= a <= hi for lo, hi in self.intervals)

    def union(self, other: "FeasibleSet") -> "FeasibleSet":
        return FeasibleSet.of(self.intervals + other.intervals, self.whole and other.whole)

    def points(self) -> list:
        """The members when every interval is degenerate."""
        if any(lo != hi for lo, hi in self.intervals):
            raise ValueError("set is not finite")
        return [lo for lo, _ in self.intervals]

    @property
    def is_finite(self) -> bool:
        return all(lo == hi for lo, hi in self.intervals)

    def map(self, fn) -> "FeasibleSet":
        """Apply a monotone increasing map to the endpoints."""
        return FeasibleSet.of([(fn(lo), fn(hi)) for lo, hi in self.intervals], self.whole)

    def same_as(self, other: "FeasibleSet") -> bool:
        if len(self.intervals) != len(other.intervals):
            return False
        return all(a[0] == b[0] and a[1] == b[1] for a, b in zip(self.intervals, other.intervals))

    def to_json(self):
        out = [[format_number(lo), format_number(hi)] for lo, hi in self.intervals]
        return {"intervals": out, "whole": self.whole} if self.whole else out

    def __str__(self):
        if self.empty:
            return "{}"
        parts = []
        for lo, hi in self.intervals:
            parts.append(f"{{{format_number(lo)}}}" if lo == hi else f"[{format_number(lo)}, {format_number(hi)}]")
        return " u ".join(parts)


def interval_distance(p, q):
    (a, b), (c, d) = p, q
    if b < c:
        return c - b
    if d < a:
        return a - d
    return 0 * (a - a)


def set_distance(s: FeasibleSet, t: FeasibleSet):
    """``inf |a - b|`` over ``a in s``, ``b in t``."""
    if s.empty or t.empty:
        raise ValueError("distance to an empty set")
    return min(interval_distance(p, q) for p in s.intervals for q in t.intervals)


def point_distance(a, t: FeasibleSet):
    return min(interval_distance((a, a), q) for q in t.intervals)


def excess(s: FeasibleSet, t: FeasibleSet):
    """``sup_{a in s} dist(a, t)``; attained at an endpoint of ``s``."""
    return max(point_distance(x, t) for iv in s.intervals for x in iv)


def _positive_branch(f, g, phi, psi, c):
    # a > 0 with a * b = c for some b in [phi, psi]  <=>  a*phi <= c <= a*psi
    lo, hi = (f if f > 0 else 0 * f), g
    if sign(phi) > 0:
        hi = min(hi, c / phi)
    elif sign(phi) == 0:
        if sign(c) < 0:
            return None
    else:
        lo = max(lo, c / phi)
    if sign(psi) > 0:
        lo = max(lo, c / psi)
    elif sign(psi) == 0:
        if sign(c) > 0:
            return None
    else:
        hi = min(hi, c / psi)
    if sign(hi) <= 0 or lo > hi:
        return None
    if sign(lo) <= 0:
        # cannot happen for c != 0: one of the two constraints bounds a away from 0
        raise AssertionError("positive branch reached a = 0")
    return lo, hi


def feasible_factor_values(f, g, phi, psi, c) -> FeasibleSet:
    """``{a in [f, g] : exists b in [phi, psi] with a*b = c}``."""
    if f > g or phi > psi:
        return FeasibleSet()
    if sign(c) == 0:
        if sign(phi) <= 0 <= sign(psi):
            return FeasibleSet.of([(f, g)], whole=True)
        if sign(f) <= 0 <= sign(g):
            z = 0 * f
            return FeasibleSet.of([(z, z)])
        return FeasibleSet()
    parts = []
    pos = _positive_branch(f, g, phi, psi, c)
    if pos is not None:
        parts.append(pos)
    # a < 0: substitute a' = -a, c' = -c
    neg = _positive_branch(-g, -f, phi, psi, -c)
    if neg is not None:
        parts.append((-neg[1], -neg[0]))
    return FeasibleSet.of(parts)


def partner(a, phi, psi, c):
    """A ``b`` in ``[phi, psi]`` with ``a*b = c`` for a feasible ``a``."""
    if sign(a) == 0:
        return phi if sign(c) == 0 else None
    b = c / a
    return b if phi <= b <= psi else None
