import random
from fractions import Fraction

import pytest

from semple2.poly import (
    PolyError,
    add,
    coefficient,
    const,
    exp_truncated,
    homogeneous_weight,
    monomial,
    mul,
    neg,
    partial,
    poly_str,
    scale,
    sub,
    term,
    truncate_weight,
    var,
    weight_part,
    zero,
)

N1 = add(
    add(term({"y210": 1}, 1), term({"y201": 1}, 3)),
    add(term({"y021": 1}, -3),
        add(term({"y200": 2}, Fraction(1, 2)),
            add(term({"y200": 1, "y011": 1}, -3), term({"y011": 2}, Fraction(9, 2))))),
)


def random_poly(rng, nterms=4):
    names = ("y200", "y020", "y210", "y101", "y011", "z010", "w001")
    p = zero()
    for _ in range(rng.randrange(nterms + 1)):
        exps = {v: rng.randrange(3) for v in rng.sample(names, rng.randrange(1, 4))}
        c = Fraction(rng.randrange(-5, 6), rng.randrange(1, 5))
        p = add(p, term(exps, c))
    return p


def test_add_additive_inverse():
    assert add(var("y200"), neg(var("y200"))) == {}


def test_add_merges_coefficients():
    half_sq = term({"y020": 2}, Fraction(1, 2))
    assert add(half_sq, half_sq) == term({"y020": 2}, 1)


def test_add_weight2_seed_part():
    got = add(term({"y201": 1}, 3), add(term({"y210": 1}, 1), term({"y021": 1}, -3)))
    linear = {m: c for m, c in N1.items() if sum(e for _, e in m) == 1}
    assert got == linear
    assert weight_part(N1, 2) == N1  # the seed is weight-homogeneous of weight 2
    assert got == {
        monomial({"y210": 1}): Fraction(1),
        monomial({"y201": 1}): Fraction(3),
        monomial({"y021": 1}): Fraction(-3),
    }


def test_mul_squares_variable():
    assert mul(var("y200"), var("y200")) == term({"y200": 2}, 1)


def test_mul_binomial_square_is_twice_seed_quadratic():
    base = sub(var("y200"), scale(var("y011"), 3))
    got = mul(base, base)
    assert got == {
        monomial({"y200": 2}): Fraction(1),
        monomial({"y200": 1, "y011": 1}): Fraction(-6),
        monomial({"y011": 2}): Fraction(9),
    }
    seed_quadratic = {m: c for m, c in N1.items()
                      if sum(e for _, e in m) == 2}  # the degree-2 monomials
    assert got == scale(seed_quadratic, 2)


def test_mul_identity():
    rng = random.Random(7)
    for _ in range(20):
        p = random_poly(rng)
        assert mul(const(1), p) == p


def test_partial_cube():
    assert partial(term({"y200": 3}, 1), "y200", 3) == const(6)


def test_partial_seed_linear_term():
    assert partial(N1, "y210", 1) == const(1)


def test_partial_vanishes_beyond_exponent():
    assert partial(term({"y200": 2, "y011": 1}, 1), "y011", 2) == {}


def test_coefficient_lookups():
    assert coefficient(N1, monomial({"y021": 1})) == -3
    assert coefficient(N1, monomial({"y200": 2})) == Fraction(1, 2)
    assert coefficient(zero(), monomial({"y210": 1})) == 0


def test_truncate_drops_heavy_terms():
    p = add(term({"y211": 1}, 1), term({"y200": 1, "y020": 1}, 1))
    assert truncate_weight(p, 2) == term({"y200": 1, "y020": 1}, 1)


def test_truncate_with_large_cap_is_identity():
    rng = random.Random(11)
    for _ in range(20):
        p = random_poly(rng)
        assert truncate_weight(p, 100) == p


def test_exp_truncation_matches_taylor():
    # direct Taylor check: exp(2a) = 1 + 2a + (2a)^2/2 + ...
    got = exp_truncated(scale(var("y020"), 2), 2)
    assert got == add(const(1), add(term({"y020": 1}, 2), term({"y020": 2}, 2)))


def test_exp_of_weightless_variable_rejected():
    with pytest.raises(PolyError):
        exp_truncated(var("z010"), 2)


def test_ring_axioms_random():
    rng = random.Random(2024)
    for _ in range(40):
        a, b, c = (random_poly(rng) for _ in range(3))
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))


def test_partial_commutes_random():
    rng = random.Random(99)
    names = ("y200", "y020", "y011", "z010")
    for _ in range(30):
        p = random_poly(rng)
        u, v = rng.choice(names), rng.choice(names)
        assert partial(partial(p, u), v) == partial(partial(p, v), u)


def test_weight_grading_of_products():
    rng = random.Random(5)
    for _ in range(30):
        a = weight_part(random_poly(rng), 2)
        b = weight_part(random_poly(rng), 1)
        p = mul(a, b)
        if p:
            assert homogeneous_weight(p) == 3


def test_truncation_compatible_with_products():
    rng = random.Random(31)
    for _ in range(30):
        a, b = random_poly(rng), random_poly(rng)
        cap = rng.randrange(5)
        direct = truncate_weight(mul(a, b), cap)
        nested = truncate_weight(
            mul(truncate_weight(a, cap), truncate_weight(b, cap)), cap)
        assert direct == nested


def test_coefficients_stay_exact_rationals():
    rng = random.Random(47)
    for _ in range(20):
        p = mul(random_poly(rng), random_poly(rng))
        for c in p.values():
            assert isinstance(c, Fraction)
            assert c != 0


def test_poly_str_is_canonical():
    p = add(term({"y200": 2}, Fraction(1, 2)), term({"y011": 2}, Fraction(9, 2)))
    assert poly_str(p) == "1/2*y200^2 + 9/2*y011^2"
    assert poly_str(zero()) == "0"
