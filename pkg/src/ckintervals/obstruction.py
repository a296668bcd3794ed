"""Certified counterexamples on ``AlphaN``.

Each scenario fixes intervals (and a target) whose per-point solution sets
are computed exactly.  Along different residue classes the forced values
cluster at different limits, so no function continuous at ``x0`` can pick
from all of them.  A :class:`Certificate` records the per-index sets, the
class-wise limit clusters, the gap between them and how far the finite depth
is from that gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import PreconditionError, SpaceMismatch
from .exact import Germ, at_index, format_number, limit_of
from .feasible import FeasibleSet, excess, feasible_factor_values, set_distance
from .interval import FnInterval, canonicalize, verify_factorization
from .space import (
    X0,
    AlphaN,
    PolyTail,
    ScalarField,
    SpaceModel,
    constant,
    field_add,
    field_mul,
    field_scale,
    is_continuous,
    is_lsc,
    seq_field,
    sup_norm_dist,
)
from .sqrt import necessity_check, real_sqrt_roots

__all__ = [
    "FeasibleSet",
    "Scenario",
    "Certificate",
    "ClosureWitness",
    "feasible_h_values",
    "forced_root_values",
    "tail_cluster_gap",
    "thm32_instance",
    "thm32_closure_witness",
    "thm33_instance",
    "thm36_instance",
    "certify_nonfactorable",
    "SCENARIOS",
]


def feasible_h_values(I: FnInterval, J: FnInterval, H: ScalarField, point) -> FeasibleSet:
    """``{a in [f(x), g(x)] : a*b = H(x) for some b in [phi(x), psi(x)]}``."""
    for other in (J.space, H.space):
        if other != I.space:
            raise SpaceMismatch(f"{other} vs {I.space}")
    return feasible_factor_values(I.lower(point), I.upper(point), J.lower(point), J.upper(point), H(point))


def forced_root_values(a, b) -> FeasibleSet:
    """Endpoint values available to a square root of ``[a, b]``.

    A square root ``[phi, psi]`` of a function interval is pointwise a root
    of the real interval, so its endpoint functions take these values.
    """
    pair = real_sqrt_roots(a, b)
    pts = [v for root in (pair.principal, pair.mirrored) for v in root]
    return FeasibleSet.of([(v, v) for v in pts])


@dataclass(frozen=True, eq=False)
class Scenario:
    """Data of one counterexample.

    ``kind == "product"``: ``fields = (f, g, phi, psi, H)``, the question is
    whether ``H`` lies in ``[f, g] * [phi, psi]``.  ``kind == "sqrt"``:
    ``fields = (f, g)``, the question is whether ``[f, g]`` has an interval
    square root.
    """

    name: str
    space: SpaceModel
    kind: str
    fields: tuple
    extras: dict = field(default_factory=dict)

    @property
    def I(self) -> FnInterval:
        return canonicalize(self.fields[0], self.fields[1])

    @property
    def J(self) -> FnInterval:
        return canonicalize(self.fields[2], self.fields[3])

    @property
    def H(self) -> ScalarField:
        return self.fields[4]

    @property
    def depth(self) -> int:
        return self.space.m

    def solve(self, vals) -> FeasibleSet:
        if self.kind == "product":
            return feasible_factor_values(*vals)
        return forced_root_values(*vals)

    def feasible_at(self, point) -> FeasibleSet:
        return self.solve([F(point) for F in self.fields])


# -- scenarios --------------------------------------------------------------


def _alpha(m: int) -> SpaceModel:
    if m < 2:
        raise PreconditionError("depth must be at least 2")
    return AlphaN(m, 2)


def thm32_instance(m: int) -> Scenario:
    """``I = [1, 2]``, ``J = [phi, phi]`` with ``phi(y_n) = 1/n``, ``H = p*phi``.

    ``p`` is ``2`` on even and ``1`` on odd indices with ``p(x0) = 0``, so
    ``H`` is continuous although ``p`` is not.
    """
    S = _alpha(m)
    one, two = constant(S, 1), constant(S, 2)
    p = seq_field(S, [[2], [1]], x0=0)
    phi = seq_field(S, [[0, 1], [0, 1]])
    H = field_mul(p, phi)
    assert is_continuous(H) and not is_continuous(p)
    return Scenario("thm32", S, "product", (one, two, phi, phi, H), {"p": p, "phi": phi})


def thm33_instance(m: int) -> Scenario:
    """``I = J = [f, g]`` with ``f = -1 + (-1)^n/n``, ``g = 1 + (-1)^n/n`` and
    ``H = (f^2 + g^2)/2 = 1 + 1/n^2``."""
    S = _alpha(m)
    f = seq_field(S, [[-1, 1], [-1, -1]], x0=-1)
    g = seq_field(S, [[1, 1], [1, -1]], x0=1)
    half = Fraction(1, 2)
    H = field_add(field_scale(half, field_mul(f, f)), field_scale(half, field_mul(g, g)))
    expected = (Fraction(1), Fraction(0), Fraction(1))
    rule = H.last_rule
    assert all(rule.classes[r] == expected for r in range(2)) and H.x0 == 1
    assert is_continuous(f) and is_continuous(g)
    return Scenario("thm33", S, "product", (f, g, f, g, H), {})


def thm36_instance(m: int) -> Scenario:
    """``f = -1/2``; ``g = 1/2`` on odd indices and at ``x0``, ``1`` on even ones."""
    S = _alpha(m)
    f = constant(S, Fraction(-1, 2))
    g = seq_field(S, [[1], [Fraction(1, 2)]], x0=Fraction(1, 2))
    assert is_lsc(g) and not is_continuous(g)
    ok, _ = necessity_check(canonicalize(f, g))
    assert ok
    return Scenario("thm36", S, "sqrt", (f, g), {})


SCENARIOS = {"thm32": thm32_instance, "thm33": thm33_instance, "thm36": thm36_instance}


# -- closure witness --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ClosureWitness:
    eps: Fraction
    cutoff: int
    p_cut: ScalarField
    H_cut: ScalarField
    distance: Fraction

    def to_json(self):
        return {"eps": format_number(self.eps), "cutoff": self.cutoff, "distance": format_number(self.distance)}


def thm32_closure_witness(scenario: Scenario, eps) -> ClosureWitness:
    """``H_cut = p_cut * phi`` in ``I * J`` within ``eps`` of ``H``.

    ``p_cut`` follows ``p`` up to the first index ``c`` with ``phi <= eps``
    from there on and is frozen at ``p(y_c)`` afterwards (including ``x0``).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if scenario.name != "thm32":
        raise PreconditionError("closure witnesses are defined for the thm32 scenario")
    S = scenario.space
    p, phi = scenario.extras["p"], scenario.extras["phi"]
    c = max(1, math.ceil(1 / eps))
    frozen = p(c)
    p_cut = seq_field(S, [[frozen], [frozen]], x0=frozen, prefix=[(1, p.last_rule.classes)], tail_start=c + 1)
    H_cut = field_mul(p_cut, phi)
    verify_factorization(scenario.I, scenario.J, H_cut, p_cut, phi)
    dist = sup_norm_dist(H_cut, scenario.H)
    if dist > eps:
        raise AssertionError(f"closure witness misses: {dist} > {eps}")
    return ClosureWitness(eps, c, p_cut, H_cut, dist)


# -- certificates -----------------------------------------------------------


@dataclass
class Certificate:
    scenario: str
    depth: int
    per_index: list
    x0_set: FeasibleSet
    clusters: list
    cluster_gap: object
    depth_gap: object
    residual: object
    threshold: int | None
    conclusive: bool
    conclusion: str
    class_excess: list = field(default_factory=list)

    def to_json(self, per_index: bool = True):
        out = {
            "scenario": self.scenario,
            "depth": self.depth,
            "conclusive": self.conclusive,
            "conclusion": self.conclusion,
            "threshold": self.threshold,
            "cluster_gap": _fmt(self.cluster_gap),
            "cluster_gap_float": _flt(self.cluster_gap),
            "depth_gap": _fmt(self.depth_gap),
            "residual": _fmt(self.residual),
            "residual_float": _flt(self.residual),
            "clusters": [s.to_json() for s in self.clusters],
            "class_excess": [_fmt(e) for e in self.class_excess],
            "x0_set": self.x0_set.to_json(),
        }
        if per_index:
            out["per_index"] = [[n, s.to_json()] for n, s in self.per_index]
        return out


def _fmt(x):
    return None if x is None else format_number(x)


def _flt(x):
    return None if x is None else float(x)


def _generic_values(scenario: Scenario, r: int):
    """Class-``r`` values of every field as exact constants or germs."""
    out = []
    for F in scenario.fields:
        rule = F.last_rule
        if not isinstance(rule, PolyTail):
            return None
        coeffs = rule.classes[r]
        out.append(coeffs[0] if len(coeffs) == 1 else Germ.from_poly(coeffs))
    return out


def _at(s: FeasibleSet, n: int) -> FeasibleSet | None:
    try:
        return FeasibleSet(tuple((at_index(lo, n), at_index(hi, n)) for lo, hi in s.intervals), s.whole)
    except ZeroDivisionError:
        return None


def tail_cluster_gap(clusters, last_sets):
    """``(gap, depth_gap, residual)`` for class-wise limit sets ``clusters``
    and the sets ``last_sets`` at the deepest index of each class.

    ``gap`` is the minimum distance between different classes' limit sets,
    ``depth_gap`` the same distance at the truncation depth and ``residual``
    how far the depth still is from the limit, ``max(0, gap - depth_gap)``.
    """
    k = len(clusters)
    if k < 2 or len(last_sets) != k:
        raise PreconditionError("insufficient depth: need sets for at least two classes")
    pairs = [(r, s) for r in range(k) for s in range(r + 1, k)]
    gap = min(set_distance(clusters[r], clusters[s]) for r, s in pairs)
    depth_gap = min(set_distance(last_sets[r], last_sets[s]) for r, s in pairs)
    residual = gap - depth_gap
    if residual < 0:
        residual = 0 * residual
    return gap, depth_gap, residual


_CONCLUSIONS = {
    "thm32": (
        "every factorization of the continuous H = p*phi forces h(y_n) = p(y_n), which "
        "oscillates between 1 and 2, so no factor is continuous at x0: H lies in the closure "
        "of [1,2]*[phi,phi] but not in it, and the product of two intervals is not closed"
    ),
    "thm33": (
        "H = (f*f + g*g)/2 is a midpoint of two members of [f,g]*[f,g], yet any factor is "
        "forced near +1 on even and near -1 on odd indices, so no continuous factorization "
        "exists and the product of [f,g] with itself is not convex"
    ),
    "thm36": (
        "endpoints of a square root of [f,g] must take values in {+-1/2, +-1} on even and "
        "{+-1/sqrt(2)} on odd indices, which have no common limit at x0, so [f,g] with a "
        "merely l.s.c. upper bound has no interval square root"
    ),
}


def certify_nonfactorable(scenario: Scenario, m: int | None = None) -> Certificate:
    """Build the certificate at depth ``m`` (default: the scenario depth).

    Returns an inconclusive certificate rather than a false one when the
    class-wise sets do not stabilise or the clusters touch.
    """
    S = scenario.space
    if S.is_discrete:
        raise PreconditionError("certificates need an AlphaN space")
    m = S.m if m is None else int(m)
    k = S.k
    if m < 2 * k:
        raise PreconditionError("insufficient depth")
    per_index = [(n, scenario.feasible_at(n)) for n in range(1, m + 1)]
    x0_set = scenario.feasible_at(X0)

    def inconclusive(why, **kw):
        base = dict(clusters=[], cluster_gap=None, depth_gap=None, residual=None, threshold=None)
        base.update(kw)
        return Certificate(scenario.name, m, per_index, x0_set, conclusive=False, conclusion=f"inconclusive: {why}", **base)

    generic, clusters = [], []
    for r in range(k):
        vals = _generic_values(scenario, r)
        if vals is None:
            return inconclusive("a field has a sampled tail; no exact class form")
        G = scenario.solve(vals)
        if G.empty:
            return inconclusive(f"class {r} admits no factor values")
        try:
            L = FeasibleSet.of([(limit_of(lo), limit_of(hi)) for lo, hi in G.intervals])
        except OverflowError:
            return inconclusive(f"class {r} feasible values are unbounded")
        generic.append(G)
        clusters.append(L)

    # the exact class form must reproduce the computed sets on a late window
    threshold = 1
    for n, s in reversed(per_index):
        g = _at(generic[n % k], n)
        if g is None or not g.same_as(s):
            threshold = n + 1
            break
    if threshold > m - k + 1:
        return inconclusive("class-wise sets do not stabilise by the requested depth", clusters=clusters)

    last_sets = [None] * k
    for n in _last_indices(m, k):
        last_sets[n % k] = per_index[n - 1][1]
    gap, depth_gap, residual = tail_cluster_gap(clusters, last_sets)
    class_excess = [excess(last_sets[r], clusters[r]) for r in range(k)]
    if not gap > 0 or not depth_gap > 0:
        return inconclusive(
            "clusters are not separated",
            clusters=clusters,
            cluster_gap=gap,
            depth_gap=depth_gap,
            residual=residual,
            threshold=threshold,
        )
    conclusion = _CONCLUSIONS.get(scenario.name, "forced values along different residue classes are separated")
    return Certificate(
        scenario.name,
        m,
        per_index,
        x0_set,
        clusters,
        gap,
        depth_gap,
        residual,
        threshold,
        True,
        conclusion,
        class_excess,
    )


def _last_indices(m: int, k: int) -> list[int]:
    return [m - i for i in range(k)]
