"""Quasi-polynomial fitting, polygon models, shears, zero patterns."""

import random
from fractions import Fraction

import pytest

from polyrec.algebra import LaurentPoly
from polyrec.polytope import Polytope
from polyrec.quasifit import (
    InsufficientData,
    PolygonModel,
    QuasiPolynomial,
    ZeroPattern,
    fit_polygon_model,
    fit_quasipoly,
    shear_polygons,
    zero_pattern,
)
from polyrec.recurrence import GeneralizedPowerSum, Recurrence, generate_terms, gps_eval


def const1(c):
    return LaurentPoly.const(1, c)


def P1(d):
    return LaurentPoly(1, {(e,): c for e, c in d.items()})


# ----------------------------------------------------------------------
# scalar fitting
# ----------------------------------------------------------------------

def test_fit_parity_constructed():
    seq = [n + (n % 2) for n in range(21)]
    model = fit_quasipoly(seq, 1, 2, 4)
    assert model is not None
    assert model.period == 2 and model.prefix == 0
    assert model.residues[0] == (Fraction(0), Fraction(1))   # n
    assert model.residues[1] == (Fraction(1), Fraction(1))   # n + 1
    assert all(model.value(n) == seq[n] for n in range(21))


def test_fit_constant():
    model = fit_quasipoly([7] * 20, 1, 2, 4)
    assert model is not None
    assert model.period == 1
    assert model.residues[0] == (Fraction(7),)


def test_fit_degree_obstruction():
    seq = [n * n for n in range(21)]
    assert fit_quasipoly(seq, 1, 2, 4) is None


def test_fit_quadratic_when_allowed():
    seq = [n * n for n in range(25)]
    model = fit_quasipoly(seq, 2, 2, 4)
    assert model is not None
    assert model.period == 1
    assert model.residues[0] == (Fraction(0), Fraction(0), Fraction(1))


def test_fit_respects_prefix():
    seq = [99, -5, 17] + list(range(3, 40))
    model = fit_quasipoly(seq, 1, 3, 8)
    assert model is not None
    assert model.period == 1 and model.prefix == 3
    assert model.residues[0] == (Fraction(0), Fraction(1))


def test_fit_skips_missing_entries():
    seq: list = [2 * n for n in range(30)]
    seq[7] = None
    seq[13] = None
    model = fit_quasipoly(seq, 1, 2, 4)
    assert model is not None
    assert model.period == 1 and model.prefix == 0
    assert model.residues[0] == (Fraction(0), Fraction(2))


def test_fit_insufficient_data():
    with pytest.raises(InsufficientData):
        fit_quasipoly([1, 2, 3], 1, 6, 8)


def test_fit_holdout_soundness_random():
    rng = random.Random(21)
    for _ in range(20):
        period = rng.randint(1, 4)
        polys = [
            (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-3, 3)))
            for _ in range(period)
        ]
        n_top = 60
        seq = [polys[n % period][0] + polys[n % period][1] * n for n in range(n_top + 1)]
        cut = 2 * n_top // 3
        model = fit_quasipoly(seq[: cut + 1], 1, 6, 8)
        assert model is not None
        for n in range(cut + 1, n_top + 1):
            assert model.value(n) == seq[n]


# ----------------------------------------------------------------------
# polygon models
# ----------------------------------------------------------------------

def test_polygon_model_segments_from_generation():
    # R_{n+2} = x R_{n+1} + R_n: Newton segments [n mod 2, n]
    rec = Recurrence([const1(1), P1({1: 1}), const1(-1)])
    terms = generate_terms(rec, [const1(1), P1({1: 1})], 40).polys
    polys = [Polytope.newton(t) for t in terms]
    model = fit_polygon_model(polys, 1, 4, 8)
    assert model is not None
    assert model.period == 2
    assert model.prefix <= 2
    # residue 0: [0, n]; residue 1: [1, n]
    assert model.residues[0][0][0] == (Fraction(0),)
    assert model.residues[0][1][0] == (Fraction(0), Fraction(1))
    assert model.residues[1][0][0] == (Fraction(1),)
    assert model.residues[1][1][0] == (Fraction(0), Fraction(1))
    for n in range(model.prefix, 41):
        assert model.polytope_at(n) == polys[n]


def test_polygon_model_constant_point():
    polys = [Polytope(1, [(0,)]) for _ in range(20)]
    model = fit_polygon_model(polys, 1, 2, 4)
    assert model is not None
    assert model.period == 1
    assert model.residues[0][0][0] == (Fraction(0),)


def test_polygon_model_growing_squares():
    polys = [
        Polytope.from_points(2, [(0, 0), (n, 0), (n, 1), (0, 1)]) for n in range(1, 31)
    ]
    # note index shift: polytope at list position n has width n+1
    model = fit_polygon_model(polys, 1, 2, 4)
    assert model is not None
    assert model.period == 1
    for n in range(len(polys)):
        assert model.polytope_at(n) == polys[n]


def test_polygon_model_dim_mismatch():
    with pytest.raises(ValueError):
        fit_polygon_model([Polytope(1, [(0,)]), Polytope(2, [(0, 0)])] * 20, 1, 1, 2)


# ----------------------------------------------------------------------
# shears
# ----------------------------------------------------------------------

def test_shear_direct_formula():
    polys = [Polytope.from_points(2, [(0, 1), (2, 0)]) for _ in range(4)]
    sheared = shear_polygons(polys, 1)
    assert sheared[3] == Polytope.from_points(2, [(-3, 1), (2, 0)])


def test_shear_f_zero_identity():
    polys = [Polytope.from_points(2, [(0, 0), (n, 0), (0, n)]) for n in range(1, 10)]
    assert shear_polygons(polys, 0) == polys


def test_shear_quasilinear_becomes_quasiquadratic():
    # triangles (0,0), (n,0), (0,n): linear model; shear must fit at degree 2
    # with the same period.  The prefix may grow by a step or two: at small n
    # the shear is near the identity and the canonical starting vertex can
    # switch identity, which the prefix budget is there to absorb.
    polys = [
        Polytope.from_points(2, [(0, 0), (n + 1, 0), (0, n + 1)])
        for n in range(31)
    ]
    base = fit_polygon_model(polys, 1, 2, 4)
    assert base is not None
    sheared = shear_polygons(polys, 1)
    model = fit_polygon_model(sheared, 2, 2, 4)
    assert model is not None
    assert model.period == base.period
    assert model.prefix <= base.prefix + 2
    assert model.degree() == 2
    for n in range(model.prefix, len(polys)):
        assert model.polytope_at(n) == sheared[n]


# ----------------------------------------------------------------------
# zero patterns
# ----------------------------------------------------------------------

def test_zero_pattern_parity():
    seq = []
    a, b = Fraction(0), Fraction(1)  # a_{n+2} = a_n with seeds 0, 1
    vals = {0: a, 1: b}
    for n in range(41):
        seq.append(vals[n % 2] if False else (Fraction(0) if n % 2 == 0 else Fraction(1)))
    pattern = zero_pattern(seq, 6, 8)
    assert pattern.period == 2
    assert pattern.full_residues == {0}
    assert pattern.sporadic == frozenset()


def test_zero_pattern_single_sporadic_zero():
    g = GeneralizedPowerSum((Fraction(2),), ((Fraction(-3), Fraction(1)),))
    seq = [gps_eval(g, n) for n in range(41)]
    pattern = zero_pattern(seq, 6, 8)
    assert pattern.full_residues == frozenset()
    assert pattern.sporadic == {3}


def test_zero_pattern_no_zeros():
    pattern = zero_pattern([1] * 41, 6, 8)
    assert pattern.full_residues == frozenset()
    assert pattern.sporadic == frozenset()


def test_zero_pattern_stability_under_extension():
    g = GeneralizedPowerSum(
        (Fraction(1), Fraction(-1)), ((Fraction(1),), (Fraction(-1),))
    )  # 1 - (-1)^n: zero on even n
    for n_top in (40, 60):
        seq = [gps_eval(g, n) for n in range(n_top + 1)]
        pattern = zero_pattern(seq, 6, 8)
        assert pattern.period == 2
        assert pattern.full_residues == {0}
        assert pattern.sporadic == frozenset()


def test_zero_pattern_insufficient():
    with pytest.raises(InsufficientData):
        zero_pattern([1, 0, 1], 6, 8)


# ----------------------------------------------------------------------
# JSON round trips
# ----------------------------------------------------------------------

def test_quasipoly_json_roundtrip():
    model = fit_quasipoly([n + (n % 2) for n in range(21)], 1, 2, 4)
    back = QuasiPolynomial.from_json(model.to_json())
    assert back == model


def test_polygon_model_json_roundtrip():
    polys = [
        Polytope.from_points(2, [(0, 0), (n + 1, 0), (n + 1, 1), (0, 1)])
        for n in range(31)
    ]
    model = fit_polygon_model(polys, 1, 2, 4)
    back = PolygonModel.from_json(model.to_json())
    assert back == model


def test_zero_pattern_json_roundtrip():
    pat = ZeroPattern(2, 0, frozenset({0}), frozenset({3}))
    assert ZeroPattern.from_json(pat.to_json()) == pat
