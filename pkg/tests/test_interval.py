import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ckintervals.errors import NotInProduct, NotSigned, PreconditionError
from ckintervals.interval import (
    bounding_pair,
    canonicalize,
    constant_interval,
    contains,
    factor_in_signed_product,
    insert_continuous,
    interval_equal,
    minkowski_sum,
    neg,
    product_envelope,
    real_interval_product,
    scalar_mul,
    signed_case,
    signed_product,
)
from ckintervals.oracle import random_interval
from ckintervals.space import (
    X0,
    AlphaN,
    Discrete,
    constant,
    discrete_field,
    field_div,
    field_max,
    field_min,
    field_mul,
    field_scale,
    fields_equal,
    is_continuous,
    leq,
    seq_field,
    usc_envelope,
)

A = AlphaN(100, 2)
D = Discrete(2)


def ci(a, b, space=A):
    return constant_interval(space, a, b)


def test_canonical_form():
    c = seq_field(A, [[0, 1], [0, -1]], x0=0)
    I = canonicalize(c, constant(A, 2))
    assert I.canonical and not I.empty and fields_equal(I.lower, c)
    osc = seq_field(A, [[1], [-1]], x0=0)
    J = canonicalize(osc, constant(A, 2))
    assert J.lower(X0) == 1 and fields_equal(J.lower, usc_envelope(osc))
    assert canonicalize(constant(A, 1), constant(A, 0)).empty


def test_contains():
    assert contains(ci(0, 1), constant(A, F(1, 2)))
    assert not contains(ci(0, 1), seq_field(A, [[1], [0]], x0=1))
    assert not contains(ci(0, 1), constant(A, 2))


def test_contains_midpoint_example_checks_pointwise_only():
    f = seq_field(A, [[-1, 1], [-1, -1]], x0=-1)
    g = seq_field(A, [[1, 1], [1, -1]], x0=1)
    H = field_scale(F(1, 2), field_mul(f, f) + field_mul(g, g))
    assert is_continuous(H)
    assert all(H(n) == 1 + F(1, n * n) for n in range(1, 200))
    # H(y_n) = 1 + 1/n^2 exceeds g(y_n) = 1 - 1/n on odd n
    assert not contains(canonicalize(f, g), H)


def test_minkowski_and_scalar():
    assert interval_equal(minkowski_sum(ci(0, 1), ci(1, 2)), ci(1, 3))
    assert interval_equal(minkowski_sum(ci(-1, 1), ci(-2, 2)), ci(-3, 3))
    assert interval_equal(scalar_mul(2, ci(-1, 1)), ci(-2, 2))
    assert interval_equal(scalar_mul(-1, ci(0, 1)), ci(-1, 0))
    I = canonicalize(seq_field(A, [[0, 1], [0, 2]], x0=0), constant(A, 3))
    assert interval_equal(scalar_mul(1, I), I)
    assert interval_equal(scalar_mul(0, I), ci(0, 0))
    assert scalar_mul(0, canonicalize(constant(A, 1), constant(A, 0))).empty


def test_real_interval_product():
    assert real_interval_product(1, 2, 3, 4) == (3, 8)
    assert real_interval_product(-1, 2, -3, 1) == (-6, 3)
    assert real_interval_product(0, 0, -5, 7) == (0, 0)
    with pytest.raises(PreconditionError):
        real_interval_product(2, 1, 0, 1)


def test_real_product_against_grid():
    rng = random.Random(5)
    for _ in range(300):
        a, b = sorted(F(rng.randint(-20, 20), 4) for _ in range(2))
        c, d = sorted(F(rng.randint(-20, 20), 4) for _ in range(2))
        xs = [a + (b - a) * F(i, 20) for i in range(21)]
        ys = [c + (d - c) * F(i, 20) for i in range(21)]
        prods = [x * y for x in xs for y in ys]
        assert real_interval_product(a, b, c, d) == (min(prods), max(prods))


def test_bounding_pair():
    bp = bounding_pair(ci(1, 2), ci(3, 4))
    assert fields_equal(bp.u, constant(A, 3)) and fields_equal(bp.v, constant(A, 8))
    f = seq_field(A, [[-1, 1], [-1, -1]], x0=-1)
    g = seq_field(A, [[1, 1], [1, -1]], x0=1)
    I = canonicalize(f, g)
    bp = bounding_pair(I, I)
    for n in range(2, 1001, 2):
        assert bp.v(n) == (1 + F(1, n)) ** 2
    assert is_continuous(bp.u) and is_continuous(bp.v)


def test_signed_products():
    assert interval_equal(signed_product(ci(1, 2), ci(3, 4)), ci(3, 8))
    assert interval_equal(signed_product(ci(1, 2), ci(-4, -3)), ci(-8, -3))
    assert interval_equal(signed_product(ci(-2, -1), ci(-4, -3)), ci(3, 8))
    assert interval_equal(signed_product(ci(-2, -1), ci(3, 4)), ci(-8, -3))
    with pytest.raises(NotSigned):
        signed_product(ci(-1, 1), ci(1, 2))


def test_signed_needs_limits_bounded_away():
    # every f(y_n) = 1/n > 0 but the infimum is 0
    phi = seq_field(A, [[0, 1], [0, 1]], x0=0)
    I = canonicalize(phi, constant(A, 1))
    with pytest.raises(NotSigned):
        signed_case(I, ci(1, 2))


def test_sign_case_reduction_identities():
    rng = random.Random(11)
    for t in range(30):
        I = random_interval(A, rng, "signed+", continuous=True)
        J = random_interval(A, rng, "signed+", continuous=True)
        P = signed_product(I, J)
        assert interval_equal(signed_product(neg(I), J), neg(P))
        assert interval_equal(signed_product(I, neg(J)), neg(P))
        assert interval_equal(signed_product(neg(I), neg(J)), P)
        assert interval_equal(P, product_envelope(I, J))


def test_insert_continuous():
    h = insert_continuous(constant(A, 0), constant(A, 1))
    assert fields_equal(h, constant(A, F(1, 2)))
    lam = seq_field(A, [[0, 1], [-1]], x0=0)
    mu = field_scale(1, lam) + 1
    lam_u = usc_envelope(lam)
    h = insert_continuous(lam_u, canonicalize(mu, mu).upper)
    assert is_continuous(h) and leq(lam_u, h)
    with pytest.raises(PreconditionError):
        insert_continuous(constant(A, 1), constant(A, 0))
    with pytest.raises(PreconditionError):
        insert_continuous(seq_field(A, [[1], [0]], x0=0), constant(A, 2))


def test_insert_from_signed_quotients():
    f = seq_field(A, [[1, F(1, 2)], [1]], x0=1)
    g = constant(A, 3)
    phi = constant(A, 1)
    psi = seq_field(A, [[2, 1], [2, -1]], x0=2)
    H = field_mul(f, psi)
    lam = field_max(f, field_div(H, psi))
    mu = field_min(g, field_div(H, phi))
    h = insert_continuous(lam, mu)
    assert is_continuous(h) and leq(lam, h) and leq(h, mu)


def test_factor_in_signed_product():
    I = ci(1, 2, D)
    H = constant(D, 2)
    h, eta = factor_in_signed_product(I, I, H)
    assert all(h(x) * eta(x) == 2 for x in range(2))
    J = ci(3, 4)
    lo, hi = constant(A, 3), constant(A, 8)
    factor_in_signed_product(ci(1, 2), J, lo)
    factor_in_signed_product(ci(1, 2), J, hi)
    with pytest.raises(NotInProduct):
        factor_in_signed_product(ci(1, 2), J, constant(A, 9))


@pytest.mark.parametrize("pi,pj", [("signed+", "signed+"), ("signed+", "signed-"), ("signed-", "signed-"), ("signed-", "signed+")])
def test_factor_random_alpha(pi, pj):
    rng = random.Random(f"fac:{pi}{pj}")
    for _ in range(8):
        I = random_interval(A, rng, pi, continuous=True)
        J = random_interval(A, rng, pj, continuous=True)
        P = signed_product(I, J)
        s = F(rng.randint(0, 8), 8)
        H = field_scale(1 - s, P.lower) + field_scale(s, P.upper)
        factor_in_signed_product(I, J, H)


vals = st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=3, max_size=3)


@given(vals, vals, vals, vals)
def test_bounding_inclusion_discrete(a, b, c, d):
    S = Discrete(3)
    f, g = [min(x, y) for x, y in zip(a, b)], [max(x, y) for x, y in zip(a, b)]
    p, q = [min(x, y) for x, y in zip(c, d)], [max(x, y) for x, y in zip(c, d)]
    I = canonicalize(discrete_field(S, f), discrete_field(S, g))
    J = canonicalize(discrete_field(S, p), discrete_field(S, q))
    bp = bounding_pair(I, J)
    for x in range(3):
        for h in (f[x], g[x], (f[x] + g[x]) / 2):
            for e in (p[x], q[x], p[x] / 3 + 2 * q[x] / 3):
                assert bp.u(x) <= h * e <= bp.v(x)
