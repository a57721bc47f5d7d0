"""Resultant elimination for one-parameter fillings.

Two polynomial relations P(m1, l1, m2) = 0 and Q(m1, l1, l2) = 0 are combined
under the filling identity m2 = l2^n: substituting powers into P and taking
the Sylvester resultant in l2 leaves a sequence R_n(m1, l1).  The sequence
satisfies a constant-coefficient recurrence, which is recovered here by exact
guessing, and the Newton polygons of its numerators carry the quasi-linear /
quasi-quadratic structure probed by the polygon-model fitter.

Determinants of Sylvester matrices are computed fraction-free (Bareiss) over
the coefficient polynomial ring.  Sign convention: the first block of rows
holds the first argument's coefficients in descending degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from polyrec.algebra import LaurentPoly, RatFn, bareiss_det
from polyrec.polytope import Polytope
from polyrec.quasifit import PolygonModel, fit_polygon_model
from polyrec.recurrence import Recurrence, guess_recurrence


def _coeff_in_var(p: LaurentPoly, index: int, degree: int) -> LaurentPoly:
    """Coefficient of x_index**degree, as a polynomial with that slot zeroed."""
    out = {}
    for e, c in p.terms.items():
        if e[index] == degree:
            out[e[:index] + (0,) + e[index + 1 :]] = c
    return LaurentPoly(p.vars, out)


def sylvester_resultant(a: LaurentPoly, b: LaurentPoly, var_index: int) -> LaurentPoly:
    """Resultant of a and b with respect to one variable.

    Laurent inputs are first cleared to ordinary polynomials in that variable
    by a monomial shift (a unit, so divisibility statements and Newton
    polytopes downstream are unaffected).  Returns the determinant of the
    Sylvester matrix over the remaining variables; if one argument has degree
    zero in the variable the classical power rule applies.
    """
    if a.vars != b.vars:
        raise ValueError("variable-count mismatch")
    if not 0 <= var_index < a.vars:
        raise ValueError("variable index out of range")
    if a.is_zero or b.is_zero:
        raise ValueError("resultant of the zero polynomial is not defined")
    sa = [0] * a.vars
    sa[var_index] = -a.valuation_in(var_index)
    sb = [0] * b.vars
    sb[var_index] = -b.valuation_in(var_index)
    a = a.shift(sa)
    b = b.shift(sb)
    da = a.degree_in(var_index)
    db = b.degree_in(var_index)
    if da == 0 and db == 0:
        raise ValueError("the variable is absent from both inputs")
    if db == 0:
        return b ** da
    if da == 0:
        return a ** db
    acoeffs = [_coeff_in_var(a, var_index, j) for j in range(da, -1, -1)]
    bcoeffs = [_coeff_in_var(b, var_index, j) for j in range(db, -1, -1)]
    size = da + db
    zero = LaurentPoly.zero(a.vars)
    matrix = []
    for i in range(db):
        row = [zero] * i + acoeffs + [zero] * (db - 1 - i)
        matrix.append(row)
    for i in range(da):
        row = [zero] * i + bcoeffs + [zero] * (da - 1 - i)
        matrix.append(row)
    assert all(len(r) == size for r in matrix)
    return bareiss_det(matrix)


@dataclass(frozen=True)
class EliminationInstance:
    """P lives in (m1, l1, m2), Q in (m1, l1, l2); slot 2 is eliminated."""

    P: LaurentPoly
    Q: LaurentPoly

    def __post_init__(self):
        if self.P.vars != 3 or self.Q.vars != 3:
            raise ValueError("P and Q must have three variables (m1, l1, fill)")
        if self.P.is_zero or self.Q.is_zero:
            raise ValueError("P and Q must be nonzero")
        if self.deg_P < 1 or self.deg_Q < 1:
            raise ValueError("P and Q must have positive degree in the filled variable")

    @property
    def deg_P(self) -> int:
        """Degree in the filled variable after monomial clearing."""
        return self.P.degree_in(2) - self.P.valuation_in(2)

    @property
    def deg_Q(self) -> int:
        return self.Q.degree_in(2) - self.Q.valuation_in(2)

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "Q": self.Q.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "EliminationInstance":
        if not isinstance(data, dict) or "P" not in data or "Q" not in data:
            raise ValueError("instance JSON must have 'P' and 'Q'")
        return cls(LaurentPoly.from_json(data["P"]), LaurentPoly.from_json(data["Q"]))


def dehn_resultant(inst: EliminationInstance, n: int) -> RatFn:
    """R_n(m1, l1): the resultant in l2 of P with m2 -> l2^n against Q.

    The raw determinant is kept (no content rescaling): per-n rescaling would
    destroy the constant-coefficient recurrence the sequence is known to
    satisfy, while divisibility and Newton polygons are unaffected either way.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    substituted = inst.P.power_subst(2, n)
    res = sylvester_resultant(substituted, inst.Q, 2)
    return RatFn(res.drop_var(2), LaurentPoly.const(2, 1), reduce=False)


@dataclass
class Theorem1Report:
    """R_1 .. R_nMax with the guessed recurrence and polygon model (if found)."""

    terms: list[RatFn]
    recurrence: Optional[Recurrence]
    model: Optional[PolygonModel]

    def to_json(self) -> dict:
        return {
            "terms": [t.to_json() for t in self.terms],
            "recurrence": None if self.recurrence is None else self.recurrence.to_json(),
            "model": None if self.model is None else self.model.to_json(),
        }


def _adaptive_guess(terms: Sequence[LaurentPoly], d_max: int) -> Optional[Recurrence]:
    """Guess with centered coefficient boxes of growing width.

    Any recurrence is equivalent, up to a monomial unit, to one whose joint
    coefficient support sits in a centered box, so widening centered boxes
    loses nothing while keeping the linear systems small.
    """
    nv = terms[0].vars
    for width in range(4):
        box = [(-width, width)] * nv
        rec = guess_recurrence(terms, d_max, box)
        if rec is not None:
            return rec
    return None


def theorem1_report(inst: EliminationInstance, n_max: int, d_max: int) -> Theorem1Report:
    """Run the elimination pipeline: terms, guessed recurrence, polygon model.

    NotFound outcomes are recorded as None rather than raised.  The polygon
    fit allows degree 2 and adapts its period bound to the available indices.
    """
    if n_max < 2 * d_max + 4:
        raise ValueError("n_max must be at least 2*d_max + 4")
    terms = [dehn_resultant(inst, n) for n in range(1, n_max + 1)]
    numerators = [t.num for t in terms]
    rec = None
    if all(not p.is_zero for p in numerators):
        rec = _adaptive_guess(numerators, d_max)
        polys = [Polytope.newton(p) for p in numerators]
        m_max = min(6, max(1, (len(polys) - 1) // 8))
        model = fit_polygon_model(polys, 2, m_max, 8)
    else:
        model = None
    return Theorem1Report(terms, rec, model)
