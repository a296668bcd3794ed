import random
from fractions import Fraction as F

import pytest

from ckintervals.errors import NoSquareRoot, PreconditionError
from ckintervals.exact import exact_sqrt, surd
from ckintervals.interval import canonicalize, constant_interval, interval_equal, real_interval_product, scalar_mul
from ckintervals.obstruction import thm36_instance
from ckintervals.oracle import random_sqrt_interval
from ckintervals.space import X0, AlphaN, Discrete, constant, field_mul, fields_equal, seq_field
from ckintervals.sqrt import hull_sqrt_factor, interval_sqrt, necessity_check, real_sqrt_roots, sqrt_branch, verify_square

A = AlphaN(50, 2)
r2 = surd(0, F(1, 2), 2)


def test_real_roots_examples():
    assert tuple(real_sqrt_roots(0, 4).principal) == (0, 2)
    assert tuple(real_sqrt_roots(0, 4).mirrored) == (-2, 0)
    assert tuple(real_sqrt_roots(F(-1, 2), F(1, 2)).principal) == (-r2, r2)
    with pytest.raises(NoSquareRoot):
        real_sqrt_roots(-2, 1)
    with pytest.raises(NoSquareRoot):
        real_sqrt_roots(-3, -1)
    with pytest.raises(PreconditionError):
        real_sqrt_roots(1, 0)


def test_real_roots_square_back_exactly():
    rng = random.Random(2)
    for _ in range(10_000):
        b = F(rng.randint(0, 400), rng.randint(1, 20))
        a = b * F(rng.randint(-24, 24), 24)
        lo, hi = real_sqrt_roots(a, b).principal
        assert real_interval_product(lo, hi, lo, hi) == (a, b)


def test_necessity_check():
    D = Discrete(1)
    assert necessity_check(constant_interval(D, -1, 1)) == (True, None)
    ok, point = necessity_check(constant_interval(A, -2, 1))
    assert not ok and point is not None
    sc = thm36_instance(100)
    assert necessity_check(sc.I)[0]


def test_interval_sqrt_examples():
    P = interval_sqrt(constant_interval(A, 0, 4))
    assert interval_equal(P.principal, constant_interval(A, 0, 2))
    P = interval_sqrt(constant_interval(A, F(-1, 2), F(1, 2)))
    assert fields_equal(P.principal.lower, constant(A, -r2)) and fields_equal(P.principal.upper, constant(A, r2))
    P = interval_sqrt(constant_interval(A, F(-1, 2), 1))
    assert interval_equal(P.principal, constant_interval(A, F(-1, 2), 1))
    assert interval_equal(P.mirrored, scalar_mul(-1, P.principal))


def test_branch_selection():
    assert sqrt_branch(constant_interval(A, 1, 2)) == 1
    assert sqrt_branch(constant_interval(A, -1, 2)) == 2
    with pytest.raises(NoSquareRoot):
        sqrt_branch(constant_interval(A, -3, 2))
    with pytest.raises(PreconditionError):
        interval_sqrt(thm36_instance(60).I)
    # lower bound positive somewhere and negative elsewhere
    with pytest.raises(PreconditionError):
        sqrt_branch(canonicalize(seq_field(A, [[F(1, 2)], [F(-1, 2)]], x0=F(-1, 2)), constant(A, 4)))


def test_verify_square_examples():
    assert verify_square(constant_interval(A, 0, 2), constant_interval(A, 0, 4)).passed
    assert verify_square(constant_interval(A, -r2, r2), constant_interval(A, F(-1, 2), F(1, 2))).passed
    rep = verify_square(constant_interval(A, -1, 1), constant_interval(A, 0, 1))
    assert not rep.passed and not rep.checks["envelope_lower"]


def test_branch_two_endpoints():
    rng = random.Random(7)
    for _ in range(20):
        I = random_sqrt_interval(A, rng)
        C = interval_sqrt(I).principal
        for x in I.lower.check_points():
            assert abs(float(C.lower(x) * C.upper(x) - I.lower(x))) <= 1e-12
            assert abs(float(C.upper(x) ** 2 - I.upper(x))) <= 1e-12


def test_violators_fail_at_reported_point():
    rng = random.Random(8)
    for space in (Discrete(4), A):
        for _ in range(50):
            I = random_sqrt_interval(space, rng, violate=True)
            ok, x = necessity_check(I)
            assert not ok
            with pytest.raises(NoSquareRoot):
                real_sqrt_roots(I.lower(x), I.upper(x))


def test_hull_factor():
    h1, h2 = hull_sqrt_factor(constant(A, F(1, 2)), X0)
    assert fields_equal(h1, constant(A, F(1, 2))) and fields_equal(h2, constant(A, 1))
    H = seq_field(A, [[F(-1, 2)], [F(-1, 2)]], x0=F(-1, 2))
    h1, h2 = hull_sqrt_factor(H, X0)
    assert fields_equal(h2, constant(A, -1)) and fields_equal(field_mul(h1, h2), H)
    h1, h2 = hull_sqrt_factor(constant(A, 0), X0)
    assert fields_equal(h2, constant(A, 1))
    with pytest.raises(PreconditionError):
        hull_sqrt_factor(constant(A, 2), X0)
