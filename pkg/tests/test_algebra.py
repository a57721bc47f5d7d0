"""Core Laurent-polynomial arithmetic: worked examples and ring properties."""

import random
from fractions import Fraction

import pytest

from polyrec.algebra import (
    LaurentPoly,
    RatFn,
    monomial_inverse,
    random_laurent,
    univariate_gcd,
)


def P1(d):
    return LaurentPoly(1, {(e,): c for e, c in d.items()})


def P2(d):
    return LaurentPoly(2, {e: c for e, c in d.items()})


# ----------------------------------------------------------------------
# products
# ----------------------------------------------------------------------

def test_mul_difference_of_squares():
    x = LaurentPoly.variable(1, 0)
    assert (x + 1) * (x - 1) == P1({2: 1, 0: -1})


def test_mul_laurent_unit_cancellation():
    x = LaurentPoly.variable(1, 0)
    xinv = LaurentPoly.variable(1, 0, -1)
    assert xinv * x == LaurentPoly.const(1, 1)


def test_mul_binomial_square():
    x1 = LaurentPoly.variable(2, 0)
    x2 = LaurentPoly.variable(2, 1)
    assert (x1 + x2) ** 2 == P2({(2, 0): 1, (1, 1): 2, (0, 2): 1})


def test_mul_variable_count_mismatch():
    with pytest.raises(ValueError):
        LaurentPoly.variable(1, 0) * LaurentPoly.variable(2, 0)


def test_mul_kronecker_path_matches_schoolbook():
    # long enough to cross the Kronecker cutoff; mixed signs and sizes
    rng = random.Random(11)
    a = P1({e: rng.randint(-50, 50) for e in range(-5, 60)})
    b = P1({e: rng.randint(-50, 50) for e in range(0, 40)})
    prod = a * b
    # independent check: evaluate both sides at several rational points
    for pt in (Fraction(2), Fraction(-3), Fraction(5, 7)):
        assert prod.evaluate([pt]) == a.evaluate([pt]) * b.evaluate([pt])


# ----------------------------------------------------------------------
# specialization
# ----------------------------------------------------------------------

def test_specialize_direct_substitution():
    p = P2({(1, 0): 1, (0, 1): 1})  # x1 + x2
    assert p.specialize((1, 2)) == P1({1: 1, 2: 1})


def test_specialize_weight_cancellation():
    p = P2({(1, -1): 1})  # x1 * x2^-1
    assert p.specialize((1, 1)) == LaurentPoly.const(1, 1)


def test_specialize_hand_example_checked_by_evaluation():
    p = P2({(2, 0): 1, (1, 1): 3})  # x1^2 + 3 x1 x2
    s = p.specialize((2, 1))
    assert s == P1({4: 1, 3: 3})
    # oracle: t=2 substitution must agree with p(4, 2)
    assert s.evaluate([Fraction(2)]) == p.evaluate([Fraction(4), Fraction(2)])


def test_specialize_zero_direction_rejected():
    with pytest.raises(ValueError):
        P2({(1, 0): 1}).specialize((0, 0))


# ----------------------------------------------------------------------
# power substitution
# ----------------------------------------------------------------------

def test_power_subst_scales_one_variable():
    # l2^2 + m1 with variables (m1, l2)
    p = P2({(0, 2): 1, (1, 0): 1})
    assert p.power_subst(1, 3) == P2({(0, 6): 1, (1, 0): 1})


def test_power_subst_identity():
    p = P2({(1, -2): 5, (0, 0): 1})
    assert p.power_subst(0, 1) == p


def test_power_subst_negative_exponents():
    p = P1({1: 1, -1: 1})
    assert p.power_subst(0, 2) == P1({2: 1, -2: 1})


# ----------------------------------------------------------------------
# valuations
# ----------------------------------------------------------------------

def test_valuations_displayed_example():
    assert P1({2: 1, 7: 1}).valuations() == (2, 7)


def test_valuations_constant():
    assert LaurentPoly.const(1, 5).valuations() == (0, 0)


def test_valuations_laurent_extremes():
    assert P1({-3: 1, 1: 1}).valuations() == (-3, 1)


def test_valuations_errors():
    with pytest.raises(ValueError):
        LaurentPoly.zero(1).valuations()
    with pytest.raises(ValueError):
        P2({(1, 0): 1}).valuations()


# ----------------------------------------------------------------------
# ring axioms and structural properties on random inputs
# ----------------------------------------------------------------------

def test_ring_axioms_random():
    rng = random.Random(101)
    for _ in range(60):
        r = rng.choice([1, 2])
        a = random_laurent(rng, r, allow_zero=True)
        b = random_laurent(rng, r, allow_zero=True)
        c = random_laurent(rng, r, allow_zero=True)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a


def test_specialize_is_ring_homomorphism():
    rng = random.Random(202)
    for _ in range(40):
        a = random_laurent(rng, 2, allow_zero=True)
        b = random_laurent(rng, 2, allow_zero=True)
        w = (rng.randint(-3, 3), rng.randint(-3, 3))
        if w == (0, 0):
            w = (1, 1)
        assert (a * b).specialize(w) == a.specialize(w) * b.specialize(w)
        assert (a + b).specialize(w) == a.specialize(w) + b.specialize(w)


def test_valuation_additivity():
    rng = random.Random(303)
    for _ in range(40):
        a = random_laurent(rng, 1)
        b = random_laurent(rng, 1)
        va = a.valuations()
        vb = b.valuations()
        assert (a * b).valuations() == (va[0] + vb[0], va[1] + vb[1])


def test_evaluation_commutes_with_operations():
    rng = random.Random(404)
    for _ in range(40):
        r = rng.choice([1, 2])
        a = random_laurent(rng, r, allow_zero=True)
        b = random_laurent(rng, r, allow_zero=True)
        pt = [Fraction(rng.choice([1, 2, 3, -1, -2]), rng.choice([1, 2, 3])) for _ in range(r)]
        assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
        assert (a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt)
        assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)


# ----------------------------------------------------------------------
# exact division, gcd, rational functions
# ----------------------------------------------------------------------

def test_divexact_recovers_factor():
    rng = random.Random(505)
    for _ in range(30):
        r = rng.choice([1, 2])
        a = random_laurent(rng, r)
        b = random_laurent(rng, r)
        assert (a * b).divexact(b) == a


def test_divexact_rejects_nondivisor():
    x = LaurentPoly.variable(1, 0)
    with pytest.raises(ValueError):
        (x ** 2 + 1).divexact(x + 1)


def test_univariate_gcd_common_factor():
    x = LaurentPoly.variable(1, 0)
    g = x + 1
    a = g * (x - 2)
    b = g * (x ** 2 + 3)
    assert univariate_gcd(a, b) == g


def test_univariate_gcd_coprime():
    x = LaurentPoly.variable(1, 0)
    assert univariate_gcd(x + 1, x - 1) == LaurentPoly.const(1, 1)


def test_univariate_gcd_ignores_laurent_units():
    x = LaurentPoly.variable(1, 0)
    a = (x + 1).shift((-3,)) * 4
    b = (x + 1) * (x - 1)
    assert univariate_gcd(a, b) == x + 1


def test_ratfn_reduction_one_variable():
    x = LaurentPoly.variable(1, 0)
    f = RatFn((x + 1) * (x - 1), (x + 1) * 2)
    assert f.num == P1({1: 1, 0: -1})
    assert f.den == LaurentPoly.const(1, 2)
    assert f == RatFn(x - 1, LaurentPoly.const(1, 2))


def test_ratfn_field_operations():
    x = LaurentPoly.variable(1, 0)
    f = RatFn(LaurentPoly.const(1, 1), x)          # 1/x
    g = RatFn(x, x + 1)                            # x/(x+1)
    s = f + g
    # 1/x + x/(x+1) = (x+1+x^2) / (x(x+1))
    assert s == RatFn(x * x + x + 1, x * (x + 1))
    assert f * g == RatFn(LaurentPoly.const(1, 1), x + 1)
    assert (f / g) == RatFn(x + 1, x * x)
    assert f - f == RatFn.from_const(1, 0)


def test_ratfn_random_field_axioms_via_evaluation():
    rng = random.Random(606)
    for _ in range(25):
        a = RatFn(random_laurent(rng, 1), random_laurent(rng, 1))
        b = RatFn(random_laurent(rng, 1), random_laurent(rng, 1))
        for pt in ([Fraction(2)], [Fraction(3, 2)], [Fraction(-5, 3)]):
            try:
                lhs = (a + b).evaluate(pt)
                rhs = a.evaluate(pt) + b.evaluate(pt)
                assert lhs == rhs
                lhs = (a * b).evaluate(pt)
                rhs = a.evaluate(pt) * b.evaluate(pt)
                assert lhs == rhs
            except ZeroDivisionError:
                continue


def test_monomial_inverse():
    m = LaurentPoly.monomial(2, Fraction(3, 2), (1, -2))
    assert m * monomial_inverse(m) == LaurentPoly.const(2, 1)


# ----------------------------------------------------------------------
# JSON round trips
# ----------------------------------------------------------------------

def test_poly_json_roundtrip_bit_exact():
    rng = random.Random(707)
    for _ in range(30):
        r = rng.choice([1, 2, 3])
        p = random_laurent(rng, r, allow_zero=True) * Fraction(1, rng.choice([1, 2, 3, 7]))
        q = LaurentPoly.from_json(p.to_json())
        assert q == p
        assert q.to_json() == p.to_json()


def test_poly_json_schema_errors():
    with pytest.raises(ValueError):
        LaurentPoly.from_json({"terms": []})
    with pytest.raises(ValueError):
        LaurentPoly.from_json({"vars": 2, "terms": [["1", "1", [0]]]})
    with pytest.raises(ValueError):
        LaurentPoly.from_json({"vars": 1, "terms": [["1", "1", [0]], ["2", "1", [0]]]})


def test_ratfn_json_roundtrip():
    x = LaurentPoly.variable(1, 0)
    f = RatFn(x * x - 1, x * 3 + 3)
    g = RatFn.from_json(f.to_json())
    assert g.num == f.num and g.den == f.den
