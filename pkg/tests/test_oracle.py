import json
import random
from fractions import Fraction as F

import pytest

from ckintervals.errors import PreconditionError
from ckintervals.interval import constant_interval, interval_equal, product_envelope, signed_product
from ckintervals.oracle import (
    GridSpec,
    formula_vs_oracle,
    grid_factor_search,
    random_interval,
    real_product_check,
    split_sum,
)
from ckintervals.space import AlphaN, Discrete, constant, discrete_field, field_inf, field_mul, field_sup, strictly_positive

D2 = Discrete(2)


def test_grid_search_examples():
    I, J = constant_interval(D2, 1, 2), constant_interval(D2, 3, 4)
    h, eta = grid_factor_search(I, J, constant(D2, 5))
    assert all(h(x) * eta(x) == 5 for x in range(2))
    assert grid_factor_search(I, J, constant(D2, 9)) is None
    h, eta = grid_factor_search(I, J, constant(D2, 3))
    assert h.values() == [1, 1] and eta.values() == [3, 3]


def test_grid_spec_validation():
    with pytest.raises(PreconditionError):
        GridSpec(resolution=1)
    with pytest.raises(PreconditionError):
        grid_factor_search(constant_interval(AlphaN(4, 2), 1, 2), constant_interval(AlphaN(4, 2), 1, 2), constant(AlphaN(4, 2), 1))


@pytest.mark.parametrize("space", [Discrete(3), AlphaN(40, 2)], ids=str)
def test_random_interval_profiles(space):
    rng = random.Random(1)
    for _ in range(20):
        assert strictly_positive(random_interval(space, rng, "signed+").lower)
        assert field_sup(random_interval(space, rng, "signed-").upper) < 0
        assert field_inf(random_interval(space, rng, "nonneg").lower) >= 0
        m = random_interval(space, rng, "mixed")
        pts = m.lower.check_points()
        assert any(m.lower(x) < 0 < m.upper(x) for x in pts)


def test_oracle_self_consistency():
    rng = random.Random(4)
    S = Discrete(4)
    for _ in range(100):
        I = random_interval(S, rng, rng.choice(["signed+", "signed-", "nonneg", "mixed"]))
        J = random_interval(S, rng, rng.choice(["signed+", "signed-", "nonneg", "mixed"]))
        s = [F(rng.randint(0, 4), 4) for _ in range(4)]
        h = discrete_field(S, [I.lower(x) + s[x] * (I.upper(x) - I.lower(x)) for x in range(4)])
        eta = discrete_field(S, [J.upper(x) - s[x] * (J.upper(x) - J.lower(x)) for x in range(4)])
        assert grid_factor_search(I, J, field_mul(h, eta)) is not None
        assert split_sum(I, J, h + eta) is not None


def test_discrete_signed_product_is_envelope():
    rng = random.Random(6)
    for _ in range(50):
        I = random_interval(Discrete(3), rng, "signed+")
        J = random_interval(Discrete(3), rng, "signed-")
        assert interval_equal(signed_product(I, J), product_envelope(I, J))


def test_formula_vs_oracle_profiles():
    for profile in ("signed+", "signed-", "3.2", "nonneg"):
        rep = formula_vs_oracle(60, 3, profile, seed=2)
        assert rep["discrepancies"] == 0, rep
    rep = formula_vs_oracle(60, 3, "mixed", seed=2)
    assert rep["discrepancies"] == 0 and rep["naive_formula_discrepancies"] > 0
    with pytest.raises(PreconditionError):
        formula_vs_oracle(1, 6, "signed+")


def test_reports_are_deterministic():
    a = json.dumps(formula_vs_oracle(30, 4, "3.3", seed=9), sort_keys=True)
    b = json.dumps(formula_vs_oracle(30, 4, "3.3", seed=9), sort_keys=True)
    assert a == b


def test_real_product_check_small():
    rep = real_product_check(count=200, res=200, seed=3, exact_res=5, exact_count=200)
    assert rep["max_abs_error"] <= 1e-9 and rep["exact_mismatches"] == 0
