"""Space models and bounded scalar fields on them.

Two compact spaces are modelled:

* ``Discrete(n)`` -- ``n`` isolated points ``0..n-1``;
* ``AlphaN(m, k)`` -- the convergent sequence ``y_1, y_2, ...`` together with
  its limit point :data:`X0`.  Tail indices are split into residue classes
  mod ``k``; indices ``1..m`` are the materialised head.

A field on ``AlphaN`` is a finite dict of head overrides, a sequence of tail
*pieces* ``(start, rule)`` covering ``[1, oo)``, and an independent value at
``X0``.  A rule is either a :class:`PolyTail` (per-class polynomial in
``1/n`` with exact rational coefficients) or an :class:`EvalTail` (an
evaluator plus declared class limits).  Keeping ``x0`` separate from the class
limits is what lets discontinuous functions be represented.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .errors import PreconditionError, SpaceMismatch
from .exact import Number, exact_sqrt, is_exact, sign

X0 = "x0"
FLOAT_TOL = 1e-12
EVAL_TAIL_TOL = 0.05
EVAL_SCAN_CAP = 20000
EVAL_MEMO_SIZE = 4096


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class SpaceModel:
    kind: str
    size: int
    modulus: int = 1

    @property
    def is_discrete(self) -> bool:
        return self.kind == "discrete"

    @property
    def m(self) -> int:
        return self.size

    @property
    def k(self) -> int:
        return self.modulus

    def points(self) -> list:
        """Every materialised point (head indices and ``X0`` on AlphaN)."""
        if self.is_discrete:
            return list(range(self.size))
        return list(range(1, self.size + 1)) + [X0]

    def contains_point(self, point) -> bool:
        if self.is_discrete:
            return isinstance(point, int) and 0 <= point < self.size
        return point == X0 or (isinstance(point, int) and not isinstance(point, bool) and point >= 1)

    def sample_indices(self) -> list[int]:
        """A deterministic probe set of tail indices: the start, the end of the
        head, just past it and a few far-out points in every class."""
        if self.is_discrete:
            return []
        m, k = self.size, self.modulus
        idx = set(range(1, min(m, 4 * k + 4) + 1))
        idx.update(range(max(1, m - 2 * k + 1), m + 2 * k + 1))
        for mult in (2, 4, 10, 100):
            idx.update(range(mult * m, mult * m + k))
        return sorted(idx)

    def __str__(self):
        if self.is_discrete:
            return f"Discrete({self.size})"
        return f"AlphaN(m={self.size}, k={self.modulus})"


def make_space(kind: str, **params) -> SpaceModel:
    kind_l = kind.lower()
    if kind_l == "discrete":
        n = params.get("n", params.get("point_count"))
        if not isinstance(n, int) or n < 1:
            raise PreconditionError(f"Discrete needs a positive point count, got {n!r}")
        return SpaceModel("discrete", n)
    if kind_l in ("alphan", "alpha_n", "alpha-n"):
        m = params.get("m", params.get("head_len"))
        k = params.get("k", params.get("modulus", 1))
        if not isinstance(m, int) or not isinstance(k, int) or m < 1 or k < 1:
            raise PreconditionError(f"AlphaN needs positive m and k, got m={m!r}, k={k!r}")
        if m < k:
            raise PreconditionError(f"AlphaN needs m >= k, got m={m}, k={k}")
        return SpaceModel("alphaN", m, k)
    raise PreconditionError(f"unknown space kind {kind!r}")


def Discrete(n: int) -> SpaceModel:
    return make_space("discrete", n=n)


def AlphaN(m: int, k: int = 1) -> SpaceModel:
    return make_space("alphaN", m=m, k=k)


# ---------------------------------------------------------------------------
# tail rules


def _trim_coeffs(coeffs) -> tuple[Fraction, ...]:
    c = [Fraction(x) for x in coeffs]
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c) if c else (Fraction(0),)


def poly_at(coeffs: Sequence[Fraction], n: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc / n + c
    return acc


@dataclass(frozen=True)
class PolyTail:
    """``n -> sum_j c[r][j] / n**j`` with ``r = n % k``."""

    classes: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(_trim_coeffs(c) for c in self.classes))

    @property
    def k(self) -> int:
        return len(self.classes)

    def value(self, n: int) -> Fraction:
        return poly_at(self.classes[n % self.k], n)

    def limit(self, r: int) -> Fraction:
        return self.classes[r][0]

    @property
    def limits(self) -> tuple:
        return tuple(c[0] for c in self.classes)

    def is_constant(self, r: int) -> bool:
        return len(self.classes[r]) == 1


class EvalTail:
    """Tail given by an evaluator ``n -> value`` and declared class limits.

    Evaluators may return exact numbers (Fraction / Surd); floats are allowed
    but then every comparison on the field goes through :data:`FLOAT_TOL`.
    """

    __slots__ = ("fn", "limits", "_memo")

    def __init__(self, fn: Callable[[int], Number], limits: tuple | None):
        self.fn = fn
        self.limits = limits
        # composed fields re-evaluate their operands at the same indices
        self._memo = {}

    def value(self, n: int):
        memo = self._memo
        if n in memo:
            return memo[n]
        v = self.fn(n)
        if len(memo) < EVAL_MEMO_SIZE:
            memo[n] = v
        return v

    def limit(self, r: int):
        if self.limits is None:
            raise ValueError("finite piece has no class limits")
        return self.limits[r]

    @property
    def k(self) -> int:
        return len(self.limits) if self.limits is not None else 0


Rule = "PolyTail | EvalTail"


# ---------------------------------------------------------------------------
# fields


@dataclass(frozen=True, eq=False)
class ScalarField:
    space: SpaceModel
    head: Mapping[int, Number]
    pieces: tuple = ()
    x0: Number | None = None
    declared_bound: Number | None = dc_field(default=None)

    # -- evaluation ---------------------------------------------------
    def __call__(self, point):
        return eval_field(self, point)

    @cached_property
    def _starts(self) -> list[int]:
        return [s for s, _ in self.pieces]

    def piece_index(self, n: int) -> int:
        return bisect.bisect_right(self._starts, n) - 1

    def rule_at(self, n: int):
        return self.pieces[self.piece_index(n)][1]

    def tail_value(self, n: int):
        if n in self.head:
            return self.head[n]
        return self.rule_at(n).value(n)

    @property
    def last_rule(self):
        return self.pieces[-1][1]

    def class_limits(self) -> tuple:
        rule = self.last_rule
        return tuple(rule.limit(r) for r in range(self.space.k))

    @property
    def is_poly(self) -> bool:
        return all(isinstance(rule, PolyTail) for _, rule in self.pieces)

    def segments(self):
        """Yield ``(start, stop, rule)``; ``stop`` is ``None`` for the last piece."""
        for i, (s, rule) in enumerate(self.pieces):
            stop = self.pieces[i + 1][0] if i + 1 < len(self.pieces) else None
            yield s, stop, rule

    def check_points(self) -> list:
        """Points at which pointwise contracts are checked: the whole head,
        the piece boundaries and the space's probe indices."""
        if self.space.is_discrete:
            return list(range(self.space.size))
        return sorted(_index_probes([self])) + [X0]

    def values(self) -> list:
        """All values on a Discrete space."""
        if not self.space.is_discrete:
            raise TypeError("values() is only defined on Discrete spaces")
        return [self.head[i] for i in range(self.space.size)]

    @cached_property
    def bound(self):
        if self.declared_bound is not None:
            return self.declared_bound
        lo, hi = field_extremes(self)
        return max(abs(lo), abs(hi))

    # -- sugar --------------------------------------------------------
    def __add__(self, other):
        return field_add(self, _coerce(other, self.space))

    __radd__ = __add__

    def __sub__(self, other):
        return field_sub(self, _coerce(other, self.space))

    def __rsub__(self, other):
        return field_sub(_coerce(other, self.space), self)

    def __mul__(self, other):
        if isinstance(other, ScalarField):
            return field_mul(self, other)
        return field_scale(other, self)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return field_div(self, _coerce(other, self.space))

    def __neg__(self):
        return field_scale(-1, self)

    def __repr__(self):
        if self.space.is_discrete:
            return f"ScalarField({self.space}, {[str(v) for v in self.values()]})"
        return f"ScalarField({self.space}, head={len(self.head)}, pieces={len(self.pieces)}, x0={self.x0})"


def _coerce(x, space: SpaceModel) -> ScalarField:
    return x if isinstance(x, ScalarField) else constant(space, x)


def _index_probes(fields: Iterable[ScalarField]) -> set[int]:
    out: set[int] = set()
    for f in fields:
        space = f.space
        if space.m <= 64:
            out.update(range(1, space.m + 1))
        out.update(space.sample_indices())
        out.update(f.head.keys())
        for s, _ in f.pieces:
            out.update(range(max(1, s - space.k), s + 2 * space.k))
    return out


# -- constructors -----------------------------------------------------------


def constant(space: SpaceModel, c) -> ScalarField:
    c = Fraction(c) if isinstance(c, int) else c
    if space.is_discrete:
        return ScalarField(space, {i: c for i in range(space.size)}, declared_bound=abs(c))
    if isinstance(c, Fraction):
        rule = PolyTail(((c,),) * space.k)
    else:
        rule = EvalTail(lambda n, c=c: c, (c,) * space.k)
    return ScalarField(space, {}, ((1, rule),), c, declared_bound=abs(c))


def discrete_field(space: SpaceModel, values: Sequence) -> ScalarField:
    if not space.is_discrete:
        raise SpaceMismatch("discrete_field needs a Discrete space")
    if len(values) != space.size:
        raise PreconditionError(f"expected {space.size} values, got {len(values)}")
    return ScalarField(space, {i: _num(v) for i, v in enumerate(values)})


def seq_field(
    space: SpaceModel,
    classes: Sequence[Sequence],
    x0=None,
    head: Mapping[int, Number] | None = None,
    prefix: Sequence[tuple[int, Sequence[Sequence]]] = (),
    tail_start: int = 1,
    bound=None,
) -> ScalarField:
    """Field on AlphaN from per-class coefficient lists.

    ``classes[r]`` holds ``c_0, c_1, ...`` for indices ``n = r (mod k)`` and
    applies from ``tail_start`` on.  ``prefix`` lists earlier pieces as
    ``(start, classes)``; the first must start at 1.
    """
    if space.is_discrete:
        raise SpaceMismatch("seq_field needs an AlphaN space")
    pieces = [(int(s), _poly(space, cls)) for s, cls in prefix]
    pieces.append((int(tail_start), _poly(space, classes)))
    starts = [s for s, _ in pieces]
    if starts[0] != 1 or any(a >= b for a, b in zip(starts, starts[1:])):
        raise PreconditionError(f"piece starts must begin at 1 and increase, got {starts}")
    tail = pieces[-1][1]
    if x0 is None:
        lims = set(tail.limits)
        if len(lims) != 1:
            raise PreconditionError("x0 must be given when class limits differ")
        x0 = lims.pop()
    head = {int(n): _num(v) for n, v in (head or {}).items()}
    if any(n < 1 for n in head):
        raise PreconditionError("head indices are positive")
    return ScalarField(space, head, tuple(pieces), _num(x0), declared_bound=bound)


def _poly(space: SpaceModel, classes) -> PolyTail:
    if len(classes) != space.k:
        raise PreconditionError(f"expected {space.k} residue classes, got {len(classes)}")
    return PolyTail(tuple(tuple(Fraction(c) for c in cl) for cl in classes))


def _num(v):
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    return v


def from_evaluator(
    space: SpaceModel,
    fn: Callable[[int], Number],
    limits: Sequence,
    x0,
    head: Mapping[int, Number] | None = None,
    tol: float = EVAL_TAIL_TOL,
) -> ScalarField:
    """Field with an evaluator tail; the declared class limits are validated.

    For each class the distance ``|fn(n) - limit|`` is sampled at the first
    class index beyond ``m``, ``2m`` and ``4m``; it must be nonincreasing and
    below ``tol`` at the last sample.
    """
    if space.is_discrete:
        raise SpaceMismatch("evaluator tails need an AlphaN space")
    limits = tuple(_num(c) for c in limits)
    if len(limits) != space.k:
        raise PreconditionError(f"expected {space.k} class limits")
    rule = EvalTail(fn, limits)
    validate_eval_tail(space, rule, tol)
    return ScalarField(space, dict(head or {}), ((1, rule),), _num(x0))


def _class_index_at_least(n: int, r: int, k: int) -> int:
    return n + ((r - n) % k)


def validate_eval_tail(space: SpaceModel, rule: EvalTail, tol: float = EVAL_TAIL_TOL) -> None:
    m, k = space.m, space.k
    for r in range(k):
        errs = []
        for mult in (1, 2, 4):
            n = _class_index_at_least(mult * m, r, k)
            errs.append(abs(float(rule.value(n)) - float(rule.limit(r))))
        if not (errs[0] + 1e-15 >= errs[1] and errs[1] + 1e-15 >= errs[2]):
            raise PreconditionError(f"class {r}: residuals {errs} are not nonincreasing")
        if errs[2] > tol:
            raise PreconditionError(f"class {r}: residual {errs[2]} exceeds {tol}")


# ---------------------------------------------------------------------------
# evaluation and limits


def eval_field(f: ScalarField, point):
    space = f.space
    if space.is_discrete:
        if not space.contains_point(point):
            raise SpaceMismatch(f"{point!r} is not a point of {space}")
        return f.head[point]
    if point == X0:
        return f.x0
    if not space.contains_point(point):
        raise SpaceMismatch(f"{point!r} is not a point of {space}")
    return f.tail_value(point)


def _require_alpha(f: ScalarField) -> None:
    if f.space.is_discrete:
        raise PreconditionError("Discrete spaces have no limit point")


def tail_limsup(f: ScalarField):
    _require_alpha(f)
    return max(f.class_limits())


def tail_liminf(f: ScalarField):
    _require_alpha(f)
    return min(f.class_limits())


def _has_float(*xs) -> bool:
    return any(not is_exact(x) for x in xs)


def le(a, b, tol: float = 0.0) -> bool:
    """``a <= b``; float operands get an absolute-plus-relative slack."""
    if _has_float(a, b) or tol:
        slack = max(tol, FLOAT_TOL) * (1 + abs(float(b)))
        return float(a) <= float(b) + slack
    return a <= b


def eq(a, b, tol: float = 0.0) -> bool:
    return le(a, b, tol) and le(b, a, tol)


def is_lsc(f: ScalarField) -> bool:
    if f.space.is_discrete:
        return True
    return le(f.x0, tail_liminf(f))


def is_usc(f: ScalarField) -> bool:
    if f.space.is_discrete:
        return True
    return le(tail_limsup(f), f.x0)


def is_continuous(f: ScalarField) -> bool:
    return is_lsc(f) and is_usc(f)


def _with_x0(f: ScalarField, x0) -> ScalarField:
    return ScalarField(f.space, f.head, f.pieces, x0, f.declared_bound)


def usc_envelope(f: ScalarField) -> ScalarField:
    if f.space.is_discrete:
        return f
    top = tail_limsup(f)
    return f if le(top, f.x0) else _with_x0(f, top)


def lsc_envelope(f: ScalarField) -> ScalarField:
    if f.space.is_discrete:
        return f
    bottom = tail_liminf(f)
    return f if le(f.x0, bottom) else _with_x0(f, bottom)


# ---------------------------------------------------------------------------
# algebra


def _same_space(f: ScalarField, g: ScalarField) -> None:
    if f.space != g.space:
        raise SpaceMismatch(f"{f.space} vs {g.space}")


def _bound_of(f, g, how):
    if f.declared_bound is None or g.declared_bound is None:
        return None
    return how(f.declared_bound, g.declared_bound)


def _combine(
    f: ScalarField,
    g: ScalarField,
    op: Callable,
    poly_op: Callable | None = None,
    bound=None,
) -> ScalarField:
    _same_space(f, g)
    space = f.space
    if space.is_discrete:
        return ScalarField(space, {i: op(f.head[i], g.head[i]) for i in range(space.size)}, declared_bound=bound)
    head = {n: op(f.tail_value(n), g.tail_value(n)) for n in set(f.head) | set(g.head)}
    starts = sorted(set(f._starts) | set(g._starts))
    pieces = []
    for i, s in enumerate(starts):
        stop = starts[i + 1] if i + 1 < len(starts) else None
        rf, rg = f.rule_at(s), g.rule_at(s)
        rule = None
        if poly_op is not None and isinstance(rf, PolyTail) and isinstance(rg, PolyTail):
            rule, extra = poly_op(rf, rg, s, stop)
            for n, v in extra.items():
                head.setdefault(n, v)
        if rule is None:
            limits = None
            if stop is None:
                limits = tuple(op(rf.limit(r), rg.limit(r)) for r in range(space.k))
            rule = EvalTail(_lift2(op, rf.value, rg.value), limits)
        pieces.append((s, rule))
    return ScalarField(space, head, tuple(pieces), op(f.x0, g.x0), declared_bound=bound)


def _lift2(op, a, b):
    return lambda n: op(a(n), b(n))


def _map(f: ScalarField, op: Callable, poly_op: Callable | None = None, bound=None) -> ScalarField:
    space = f.space
    if space.is_discrete:
        return ScalarField(space, {i: op(v) for i, v in f.head.items()}, declared_bound=bound)
    head = {n: op(v) for n, v in f.head.items()}
    pieces = []
    for s, stop, rule in f.segments():
        new = poly_op(rule) if (poly_op is not None and isinstance(rule, PolyTail)) else None
        if new is None:
            limits = None
            if stop is None:
                limits = tuple(op(rule.limit(r)) for r in range(space.k))
            new = EvalTail(_lift1(op, rule.value), limits)
        pieces.append((s, new))
    return ScalarField(space, head, tuple(pieces), op(f.x0), declared_bound=bound)


def _lift1(op, a):
    return lambda n: op(a(n))


def _poly_add(p: PolyTail, q: PolyTail, s, stop):
    out = []
    for cp, cq in zip(p.classes, q.classes):
        n = max(len(cp), len(cq))
        out.append(tuple((cp[j] if j < len(cp) else 0) + (cq[j] if j < len(cq) else 0) for j in range(n)))
    return PolyTail(tuple(out)), {}


def _conv(cp, cq):
    out = [Fraction(0)] * (len(cp) + len(cq) - 1)
    for i, a in enumerate(cp):
        if a:
            for j, b in enumerate(cq):
                out[i + j] += a * b
    return tuple(out)


def _poly_mul(p: PolyTail, q: PolyTail, s, stop):
    return PolyTail(tuple(_conv(cp, cq) for cp, cq in zip(p.classes, q.classes))), {}


def _poly_div(p: PolyTail, q: PolyTail, s, stop):
    if not all(len(c) == 1 and c[0] != 0 for c in q.classes):
        return None, {}
    return PolyTail(tuple(tuple(a / cq[0] for a in cp) for cp, cq in zip(p.classes, q.classes))), {}


def field_add(f: ScalarField, g: ScalarField) -> ScalarField:
    return _combine(f, g, lambda a, b: a + b, _poly_add, _bound_of(f, g, lambda a, b: a + b))


def field_sub(f: ScalarField, g: ScalarField) -> ScalarField:
    return field_add(f, field_scale(-1, g))


def field_mul(f: ScalarField, g: ScalarField) -> ScalarField:
    return _combine(f, g, lambda a, b: a * b, _poly_mul, _bound_of(f, g, lambda a, b: a * b))


def field_scale(c, f: ScalarField) -> ScalarField:
    c = Fraction(c) if isinstance(c, int) else c
    bound = abs(c) * f.declared_bound if f.declared_bound is not None else None
    poly = None
    if isinstance(c, Fraction):
        poly = lambda p: PolyTail(tuple(tuple(c * a for a in cl) for cl in p.classes))  # noqa: E731
    return _map(f, lambda v: c * v, poly, bound)


def _checked_div(a, b):
    if b == 0:
        raise ZeroDivisionError("field division by a vanishing value")
    return a / b


def field_div(f: ScalarField, g: ScalarField) -> ScalarField:
    """Pointwise quotient; stays polynomial only for per-class constant denominators."""
    return _combine(f, g, _checked_div, _poly_div)


def field_sqrt(f: ScalarField) -> ScalarField:
    b = f.declared_bound
    return _map(f, exact_sqrt, None, exact_sqrt(b) if b is not None and is_exact(b) else None)


def field_apply(f: ScalarField, fn: Callable) -> ScalarField:
    """Apply a continuous scalar function pointwise (tails become evaluators)."""
    return _map(f, fn)


def crossover_index(p: Sequence[Fraction], q: Sequence[Fraction]) -> tuple[int, int]:
    """Compare two class polynomials asymptotically.

    Returns ``(s, N)`` where ``s`` is the eventual sign of ``p - q`` and the
    sign is constant for every ``n > N``.  With ``d_j0`` the first nonzero
    coefficient of the difference and ``M`` the largest later magnitude,
    ``|sum_{j>j0} d_j x^(j-j0)| <= M x/(1-x) < |d_j0|`` once
    ``n = 1/x > 1 + M/|d_j0|``.
    """
    n = max(len(p), len(q))
    d = [(p[j] if j < len(p) else 0) - (q[j] if j < len(q) else 0) for j in range(n)]
    j0 = next((j for j, c in enumerate(d) if c != 0), None)
    if j0 is None:
        return 0, 0
    lead = abs(Fraction(d[j0]))
    rest = max((abs(Fraction(c)) for c in d[j0 + 1 :]), default=Fraction(0))
    if rest == 0:
        return sign(d[j0]), 0
    return sign(d[j0]), math.floor(1 + rest / lead)


def _poly_lattice(pick_min: bool):
    def op(p: PolyTail, q: PolyTail, s: int, stop):
        chosen = []
        extra = {}
        for r, (cp, cq) in enumerate(zip(p.classes, q.classes)):
            sgn, N = crossover_index(cp, cq)
            take_p = sgn <= 0 if pick_min else sgn >= 0
            chosen.append(cp if take_p else cq)
            hi = N if stop is None else min(N, stop - 1)
            n = _class_index_at_least(max(s, 1), r, p.k)
            while n <= hi:
                a, b = poly_at(cp, n), poly_at(cq, n)
                v = min(a, b) if pick_min else max(a, b)
                if v != (a if take_p else b):
                    extra[n] = v
                n += p.k
        return PolyTail(tuple(chosen)), extra

    return op


def field_min(f: ScalarField, g: ScalarField) -> ScalarField:
    return _combine(f, g, min, _poly_lattice(True), _bound_of(f, g, max))


def field_max(f: ScalarField, g: ScalarField) -> ScalarField:
    return _combine(f, g, max, _poly_lattice(False), _bound_of(f, g, max))


def field_abs(f: ScalarField) -> ScalarField:
    return field_max(f, field_scale(-1, f))


# ---------------------------------------------------------------------------
# extremes, order and distance


def _mono_threshold(coeffs: Sequence[Fraction]) -> int | None:
    """Index beyond which ``n -> p(n)`` is monotone; ``None`` for constants."""
    deriv = [j * c for j, c in enumerate(coeffs)][1:]
    j0 = next((j for j, c in enumerate(deriv) if c != 0), None)
    if j0 is None:
        return None
    _, N = crossover_index(deriv, [0] * len(deriv))
    return N


def poly_class_extremes(coeffs, r: int, k: int, start: int, stop: int | None, skip=frozenset()):
    """Exact ``(inf, sup)`` of ``{p(n) : n = r mod k, start <= n < stop, n not in skip}``.

    For an infinite range the class limit ``c_0`` is included (it is the
    limit of the values, so the closure extremes are returned).  Returns
    ``None`` when the index set is empty.
    """
    vals = []
    n = _class_index_at_least(max(start, 1), r, k)

    def admissible(i):
        return stop is None or i < stop

    N = _mono_threshold(coeffs)
    if N is None:
        while admissible(n) and n in skip:
            n += k
        if not admissible(n):
            return None
        return coeffs[0], coeffs[0]
    while admissible(n) and n <= N:
        if n not in skip:
            vals.append(poly_at(coeffs, n))
        n += k
    while admissible(n) and n in skip:
        n += k
    if admissible(n):
        vals.append(poly_at(coeffs, n))
        if stop is None:
            vals.append(coeffs[0])
        else:
            last = _class_index_at_least(stop - k, r, k)
            if last >= stop:
                last -= k
            while last > n and last in skip:
                last -= k
            if last > n:
                vals.append(poly_at(coeffs, last))
    if not vals:
        return None
    return min(vals), max(vals)


def _eval_piece_indices(space: SpaceModel, start: int, stop: int | None) -> list[int]:
    """Sample indices for an evaluator piece: every index of a short piece,
    otherwise a dense run at the start, the head boundary and a doubling
    sequence out to ``100 * max(m, start)``."""
    if stop is not None and stop - start <= EVAL_SCAN_CAP:
        return list(range(start, stop))
    k = space.k
    idx = set(range(start, start + 32 * k))
    end = stop if stop is not None else 100 * max(space.m, start) + k
    idx.update(range(max(start, space.m - 2 * k), space.m + 2 * k))
    x = start + 32 * k
    while x < end:
        idx.update(range(x, x + k))
        x *= 2
    if stop is not None:
        idx.update(range(max(start, stop - k), stop))
    return sorted(n for n in idx if n >= start and (stop is None or n < stop))


def _piece_extremes(f: ScalarField, start: int, stop, rule):
    space = f.space
    lo = hi = None
    if isinstance(rule, PolyTail):
        skip = frozenset(f.head)
        for r in range(space.k):
            ex = poly_class_extremes(rule.classes[r], r, space.k, start, stop, skip)
            if ex is None:
                continue
            lo = ex[0] if lo is None else min(lo, ex[0])
            hi = ex[1] if hi is None else max(hi, ex[1])
        return lo, hi
    vals = [rule.value(n) for n in _eval_piece_indices(space, start, stop) if n not in f.head]
    if stop is None:
        vals.extend(rule.limits)
    if not vals:
        return None, None
    return min(vals), max(vals)


def field_extremes(f: ScalarField) -> tuple:
    """``(inf, sup)`` over the whole space, class limits included.

    Exact for polynomial tails; evaluator tails are sampled.
    """
    vals = list(f.head.values())
    if not f.space.is_discrete:
        vals.append(f.x0)
        for s, stop, rule in f.segments():
            lo, hi = _piece_extremes(f, s, stop, rule)
            if lo is not None:
                vals.extend((lo, hi))
    return min(vals), max(vals)


def field_inf(f: ScalarField):
    return field_extremes(f)[0]


def field_sup(f: ScalarField):
    return field_extremes(f)[1]


def leq(f: ScalarField, g: ScalarField, tol: float = 0.0) -> bool:
    """``f <= g`` at every point (exact for polynomial data)."""
    _same_space(f, g)
    return le(0, field_inf(field_sub(g, f)), tol)


def strictly_positive(f: ScalarField) -> bool:
    """Infimum over the space, class limits included, is ``> 0``."""
    lo = field_inf(f)
    return lo > FLOAT_TOL if not is_exact(lo) else lo > 0


def strictly_negative(f: ScalarField) -> bool:
    hi = field_sup(f)
    return hi < -FLOAT_TOL if not is_exact(hi) else hi < 0


def sup_norm_dist(f: ScalarField, g: ScalarField):
    _same_space(f, g)
    lo, hi = field_extremes(field_sub(f, g))
    return max(abs(lo), abs(hi))


def fields_equal(f: ScalarField, g: ScalarField, tol: float = 0.0) -> bool:
    return le(sup_norm_dist(f, g), 0, tol)


def first_violation(f: ScalarField, g: ScalarField, tol: float = 0.0):
    """First check point where ``f <= g`` fails, or ``None``."""
    _same_space(f, g)
    for x in _union_check_points(f, g):
        if not le(f(x), g(x), tol):
            return x
    return None


def _union_check_points(*fields: ScalarField) -> list:
    space = fields[0].space
    if space.is_discrete:
        return list(range(space.size))
    return sorted(_index_probes(fields)) + [X0]


def check_points(*fields: ScalarField) -> list:
    return _union_check_points(*fields)


@lru_cache(maxsize=None)
def _zero(space: SpaceModel) -> ScalarField:
    return constant(space, 0)


def zero(space: SpaceModel) -> ScalarField:
    return _zero(space)
