from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ckintervals.errors import PreconditionError, SpaceMismatch
from ckintervals.exact import exact_sqrt
from ckintervals.space import (
    X0,
    AlphaN,
    Discrete,
    constant,
    crossover_index,
    discrete_field,
    field_add,
    field_max,
    field_min,
    field_mul,
    field_sqrt,
    field_sub,
    fields_equal,
    from_evaluator,
    is_continuous,
    is_lsc,
    is_usc,
    lsc_envelope,
    make_space,
    seq_field,
    sup_norm_dist,
    tail_liminf,
    tail_limsup,
    usc_envelope,
)

A = AlphaN(100, 2)


def test_space_constructors():
    assert Discrete(3).points() == [0, 1, 2]
    assert A.kind == "alphaN" and A.m == 100 and A.k == 2
    assert make_space("discrete", n=1).size == 1
    with pytest.raises(PreconditionError):
        AlphaN(1, 2)
    with pytest.raises(PreconditionError):
        make_space("cantor", n=3)


def test_eval_head_tail_and_x0():
    phi = seq_field(A, [[0, 1], [0, 1]], x0=0)
    assert phi(7) == F(1, 7)
    f = seq_field(A, [[-1, 1], [-1, -1]], x0=-1)
    assert f(4) == F(-3, 4)
    assert f(X0) == -1
    g = seq_field(A, [[1], [1]], head={3: F(5)})
    assert g(3) == 5 and g(5) == 1
    assert constant(A, F(3, 2))(10**9) == F(3, 2)


def test_foreign_point_rejected():
    with pytest.raises(SpaceMismatch):
        discrete_field(Discrete(2), [1, 2])(5)
    with pytest.raises(SpaceMismatch):
        constant(A, 1)(0)


def test_tail_limits():
    osc = seq_field(A, [[1], [-1]], x0=0)
    assert (tail_limsup(osc), tail_liminf(osc)) == (1, -1)
    phi = seq_field(A, [[0, 1], [0, 1]], x0=0)
    assert tail_limsup(phi) == tail_liminf(phi) == 0
    mixed = seq_field(A, [[1, 1], [2]], x0=1)
    assert (tail_limsup(mixed), tail_liminf(mixed)) == (2, 1)
    with pytest.raises(PreconditionError):
        tail_limsup(discrete_field(Discrete(2), [0, 1]))


def test_semicontinuity_flags():
    phi = seq_field(A, [[0, 1], [0, 1]], x0=0)
    assert is_continuous(phi)
    g = seq_field(A, [[1], [F(1, 2)]], x0=F(1, 2))
    assert is_lsc(g) and not is_usc(g)
    # classes 1 and 2 with value 0 at x0: 0 <= liminf, so lower semicontinuous
    p = seq_field(A, [[2], [1]], x0=0)
    assert is_lsc(p) and not is_usc(p) and not is_continuous(p)
    d = discrete_field(Discrete(3), [5, -1, 0])
    assert is_lsc(d) and is_usc(d)


def test_envelopes():
    d = discrete_field(Discrete(3), [1, 2, 3])
    assert fields_equal(usc_envelope(d), d) and fields_equal(lsc_envelope(d), d)
    f = seq_field(A, [[1], [-1]], x0=0)
    assert usc_envelope(f)(X0) == 1 and lsc_envelope(f)(X0) == -1
    assert usc_envelope(f)(6) == 1 and usc_envelope(f)(7) == -1
    c = seq_field(A, [[1, 3], [1, -2]], x0=1)
    assert fields_equal(usc_envelope(c), c) and fields_equal(lsc_envelope(c), c)


def test_poly_arithmetic():
    f = seq_field(A, [[-1, 1], [-1, -1]], x0=-1)
    sq = field_mul(f, f)
    assert sq.is_poly
    assert sq.last_rule.classes == ((1, -2, 1), (1, 2, 1))
    c = constant(A, F(2, 3))
    assert fields_equal(field_min(c, c), c)
    p, q = seq_field(A, [[1, 1], [1, 1]]), seq_field(A, [[1, 2], [1, 2]])
    hi = field_max(p, q)
    assert all(hi(n) == q(n) for n in range(1, 10_001))


def test_crossover_index_sound():
    p, q = (F(1), F(-100)), (F(1), F(0), F(3))
    s, N = crossover_index(p, q)
    for n in (N + 1, 2 * N, 10 * N):
        a = p[0] + p[1] / n
        b = q[0] + q[1] / n + q[2] / (n * n)
        assert (a < b) == (s < 0)


def test_sup_norm_dist():
    f = seq_field(A, [[1, 1], [2, -1]], x0=1, head={2: 7})
    assert sup_norm_dist(f, f) == 0
    assert sup_norm_dist(constant(A, 1), constant(A, 2)) == 1
    d1, d2 = discrete_field(Discrete(3), [0, 1, 2]), discrete_field(Discrete(3), [1, 1, -1])
    assert sup_norm_dist(d1, d2) == 3


def test_space_mismatch():
    with pytest.raises(SpaceMismatch):
        field_add(constant(A, 1), constant(AlphaN(10, 2), 1))


def test_evaluator_tail_validation():
    s = from_evaluator(A, lambda n: 1 + F(1, n), (1, 1), x0=1)
    assert s(4) == F(5, 4)
    with pytest.raises(PreconditionError):
        from_evaluator(A, lambda n: F(n % 3), (0, 0), x0=0)
    with pytest.raises(PreconditionError):
        from_evaluator(A, lambda n: F(1, 2), (0, 0), x0=0)


def test_sqrt_field_exact():
    g = seq_field(A, [[4], [2]], x0=2)
    r = field_sqrt(g)
    assert r(2) == 2 and r(3) == exact_sqrt(2)
    assert r(X0) * r(X0) == 2


coeff = st.fractions(min_value=-3, max_value=3, max_denominator=6)
classes = st.lists(st.lists(coeff, min_size=1, max_size=3), min_size=2, max_size=2)


def _field(cls, x0):
    return seq_field(AlphaN(30, 2), cls, x0=x0)


@given(classes, classes, coeff)
def test_poly_product_is_pointwise(c1, c2, x0):
    f, g = _field(c1, x0), _field(c2, x0)
    h = field_mul(f, g)
    for n in (1, 2, 3, 17, 30, 31, 1000, 1001):
        assert h(n) == f(n) * g(n)
    assert h(X0) == f(X0) * g(X0)
    assert fields_equal(field_sub(field_add(f, g), g), f)


@given(classes, coeff)
def test_envelope_properties(cls, x0):
    f = _field(cls, x0)
    u, l = usc_envelope(f), lsc_envelope(f)
    assert is_usc(u) and is_lsc(l)
    assert fields_equal(usc_envelope(u), u)
    for x in f.check_points():
        assert l(x) <= f(x) <= u(x)
    assert is_continuous(f) == (is_lsc(f) and is_usc(f))


@given(classes, classes, coeff)
def test_min_max_pointwise(c1, c2, x0):
    f, g = _field(c1, x0), _field(c2, x0)
    lo, hi = field_min(f, g), field_max(f, g)
    for n in list(range(1, 80)) + [500, 501, 10**5, 10**5 + 1]:
        assert lo(n) == min(f(n), g(n)) and hi(n) == max(f(n), g(n))
