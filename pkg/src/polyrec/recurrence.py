"""Constant-coefficient linear recurrences of Laurent polynomials.

Covers the full life cycle: stepping a recurrence forward (and backward when
the trailing coefficient is a unit), recognizing a recurrence from a list of
terms by exact linear algebra, generalized power sums and the recurrence
read off their product polynomial, and trace sequences tr(A B^n) of matrices
over a one-variable rational-function field together with the Cayley-Hamilton
recurrence that annihilates them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd
from typing import Optional, Sequence

from polyrec.algebra import (
    LaurentPoly,
    RatFn,
    bareiss_det,
    monomial_inverse,
    univariate_gcd,
)


class Recurrence:
    """sum_k c_k R_{n+k} = 0 with constant Laurent-polynomial coefficients.

    ``coeffs`` lists c_0 .. c_d.  Both end coefficients must be nonzero; the
    Cayley-Hamilton construction is the one sanctioned exception for c_0
    (a singular matrix has characteristic constant term 0).
    """

    __slots__ = ("coeffs", "vars")

    def __init__(self, coeffs: Sequence[LaurentPoly], *, allow_zero_c0: bool = False):
        coeffs = tuple(coeffs)
        if len(coeffs) < 2:
            raise ValueError("a recurrence needs order at least 1")
        nv = coeffs[0].vars
        if any(c.vars != nv for c in coeffs):
            raise ValueError("coefficients must share a variable count")
        if coeffs[-1].is_zero:
            raise ValueError("leading coefficient c_d must be nonzero")
        if coeffs[0].is_zero and not allow_zero_c0:
            raise ValueError("trailing coefficient c_0 must be nonzero")
        self.coeffs = coeffs
        self.vars = nv

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def unit_leading(self) -> bool:
        """True when c_d is a monomial, i.e. a unit of the Laurent ring."""
        return self.coeffs[-1].is_monomial()

    def char_poly(self) -> LaurentPoly:
        """sum_k c_k(x) z^k as a polynomial with z as variable 0."""
        out = {}
        for k, c in enumerate(self.coeffs):
            for e, v in c.terms.items():
                out[(k,) + e] = v
        return LaurentPoly(self.vars + 1, out)

    def __eq__(self, other):
        if not isinstance(other, Recurrence):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __repr__(self):
        return f"Recurrence(order={self.order}, coeffs={list(self.coeffs)!r})"

    def to_json(self) -> dict:
        return {"vars": self.vars, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Recurrence":
        if not isinstance(data, dict) or "coeffs" not in data:
            raise ValueError("recurrence JSON must have 'coeffs'")
        coeffs = [LaurentPoly.from_json(c) for c in data["coeffs"]]
        if "vars" in data and coeffs and coeffs[0].vars != data["vars"]:
            raise ValueError("recurrence 'vars' disagrees with coefficients")
        return cls(coeffs)


@dataclass
class TermSequence:
    """Result of stepping a recurrence: R_0 .. R_N.

    In unit-leading mode every term is an honest Laurent polynomial and
    ``denominator_free`` is True.  In the one-variable fraction mode
    ``fractions`` holds the exact reduced values; ``polys`` then contains the
    terms themselves whenever their denominators are units, and bare
    numerators (with ``denominator_free`` False) otherwise.
    """

    polys: list[LaurentPoly]
    denominator_free: bool = True
    fractions: Optional[list[RatFn]] = None


def generate_terms(rec: Recurrence, init: Sequence[LaurentPoly], n_max: int) -> TermSequence:
    """Generate R_0 .. R_{n_max} from d initial terms.

    Requires c_d to be a monomial when there are two or more variables (so
    terms stay in the Laurent ring); one-variable recurrences fall back to
    exact rational-function stepping.
    """
    d = rec.order
    init = list(init)
    if len(init) != d:
        raise ValueError(f"need exactly {d} initial terms, got {len(init)}")
    if any(p.vars != rec.vars for p in init):
        raise ValueError("initial terms must match the recurrence's variables")
    if n_max < d - 1:
        raise ValueError("n_max must be at least order - 1")
    if rec.unit_leading:
        inv = monomial_inverse(rec.coeffs[-1])
        terms = list(init)
        lower = rec.coeffs[:-1]
        for n in range(d, n_max + 1):
            s = LaurentPoly.zero(rec.vars)
            for k, c in enumerate(lower):
                s = s + c * terms[n - d + k]
            terms.append(-(inv * s))
        return TermSequence(terms[: n_max + 1], True)
    if rec.vars != 1:
        raise ValueError("c_d must be a monomial (unit) when vars >= 2")
    cd = RatFn(rec.coeffs[-1])
    values = [RatFn(p) for p in init]
    for n in range(d, n_max + 1):
        s = RatFn.from_const(1, 0)
        for k, c in enumerate(rec.coeffs[:-1]):
            s = s + RatFn(c) * values[n - d + k]
        values.append(-(s / cd))
    values = values[: n_max + 1]
    polys = []
    denominator_free = True
    for v in values:
        if v.den.is_monomial():
            polys.append(v.num * monomial_inverse(v.den))
        else:
            polys.append(v.num)
            denominator_free = False
    return TermSequence(polys, denominator_free, values)


def generate_backward(rec: Recurrence, init: Sequence[LaurentPoly], count: int) -> list[LaurentPoly]:
    """R_{-1} .. R_{-count}, stepping the recursion backwards.

    Only available when c_0 is a unit of the Laurent ring, since each
    backward step divides by it.
    """
    d = rec.order
    if not rec.coeffs[0].is_monomial():
        raise ValueError("backward generation needs a monomial c_0")
    if len(init) != d:
        raise ValueError(f"need exactly {d} initial terms")
    inv = monomial_inverse(rec.coeffs[0])
    window = list(init)  # R_n+1 .. R_n+d as we step n downward
    out = []
    for _ in range(count):
        s = LaurentPoly.zero(rec.vars)
        for k in range(1, d + 1):
            s = s + rec.coeffs[k] * window[k - 1]
        r = -(inv * s)
        out.append(r)
        window = [r] + window[:-1]
    return out


def annihilates(rec: Recurrence, terms: Sequence[LaurentPoly]) -> bool:
    """Exact check that sum_k c_k T_{n+k} = 0 for every window of terms."""
    d = rec.order
    for n in range(len(terms) - d):
        s = LaurentPoly.zero(rec.vars)
        for k, c in enumerate(rec.coeffs):
            s = s + c * terms[n + k]
        if not s.is_zero:
            return False
    return True


def annihilates_fractions(rec: Recurrence, seq: Sequence[RatFn]) -> bool:
    """Exact annihilation check over a rational-function sequence.

    Works on cleared numerators: when every window denominator divides the
    last one (the usual case for iterated-product sequences) a single exact
    division per term suffices; otherwise falls back to accumulating over
    the product denominator.
    """
    d = rec.order
    coeffs = rec.coeffs
    for n in range(len(seq) - d):
        window = seq[n : n + d + 1]
        base = window[-1].den
        quotients = []
        for t in window:
            try:
                quotients.append(base.divexact(t.den))
            except ValueError:
                quotients = None
                break
        if quotients is not None:
            s = LaurentPoly.zero(rec.vars)
            for c, t, q in zip(coeffs, window, quotients):
                s = s + c * t.num * q
            if not s.is_zero:
                return False
            continue
        num = coeffs[0] * window[0].num
        den = window[0].den
        for c, t in zip(coeffs[1:], window[1:]):
            num = num * t.den + c * t.num * den
            den = den * t.den
        if not num.is_zero:
            return False
    return True


# ----------------------------------------------------------------------
# recurrence guessing
# ----------------------------------------------------------------------

SupportBox = Sequence[tuple[int, int]]


def default_support_box(terms: Sequence[LaurentPoly]) -> list[tuple[int, int]]:
    """Per-variable exponent bounds: the union of term supports dilated by 1."""
    nv = terms[0].vars
    lo = [0] * nv
    hi = [0] * nv
    seen = False
    for t in terms:
        for e in t.terms:
            if not seen:
                lo = list(e)
                hi = list(e)
                seen = True
            else:
                lo = [min(a, b) for a, b in zip(lo, e)]
                hi = [max(a, b) for a, b in zip(hi, e)]
    return [(l - 1, h + 1) for l, h in zip(lo, hi)]


def guess_recurrence(
    terms: Sequence[LaurentPoly],
    d_max: int,
    support_box: SupportBox | None = None,
) -> Optional[Recurrence]:
    """Find the least-order recurrence annihilating every window of terms.

    Coefficients are confined to the given exponent box (see
    ``default_support_box``).  The solution is canonicalized: coefficients
    are jointly shifted so their minimum exponent is zero in each variable,
    one-variable coefficient lists are divided by their common polynomial
    gcd, and c_d's lexicographically least term gets coefficient 1.
    Returns None when every nullspace up to d_max is trivial.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("no terms given")
    nv = terms[0].vars
    if any(t.vars != nv for t in terms):
        raise ValueError("terms must share a variable count")
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    if len(terms) < 2 * d_max + 2:
        raise ValueError(f"need at least {2 * d_max + 2} terms for d_max={d_max}")
    if support_box is None:
        support_box = default_support_box(terms)
    if len(support_box) != nv:
        raise ValueError("support box dimension mismatch")
    exps = sorted(itertools.product(*[range(lo, hi + 1) for lo, hi in support_box]))
    for d in range(1, d_max + 1):
        rec = _guess_at_order(terms, d, exps, nv)
        if rec is not None:
            return rec
    return None


def _guess_at_order(terms, d, exps, nv) -> Optional[Recurrence]:
    width = len(exps)
    ncols = (d + 1) * width
    rows = []
    for n in range(len(terms) - d):
        rowmap: dict[tuple, list] = {}
        for k in range(d + 1):
            base = k * width
            for ei, e in enumerate(exps):
                col = base + ei
                for mu, c in terms[n + k].terms.items():
                    key = tuple(a + b for a, b in zip(mu, e))
                    row = rowmap.get(key)
                    if row is None:
                        row = [0] * ncols
                        rowmap[key] = row
                    row[col] += c
        rows.extend(rowmap.values())
    for vec in _nullspace(rows, ncols):
        blocks = [vec[k * width : (k + 1) * width] for k in range(d + 1)]
        if not any(blocks[-1]) or not any(blocks[0]):
            continue
        coeffs = [
            LaurentPoly(nv, {e: v for e, v in zip(exps, blk) if v}) for blk in blocks
        ]
        return _canonicalize_recurrence(coeffs, nv)
    return None


def _canonicalize_recurrence(coeffs: list[LaurentPoly], nv: int) -> Recurrence:
    if nv == 1:
        g = LaurentPoly.zero(1)
        for c in coeffs:
            if not c.is_zero:
                g = univariate_gcd(g, c)
        if g.degree_in(0) > 0:
            coeffs = [c.divexact(g) if not c.is_zero else c for c in coeffs]
    mins = None
    for c in coeffs:
        for e in c.terms:
            mins = list(e) if mins is None else [min(a, b) for a, b in zip(mins, e)]
    if mins and any(mins):
        shift = [-m for m in mins]
        coeffs = [c.shift(shift) if not c.is_zero else c for c in coeffs]
    _, lead = coeffs[-1].least_term_lex()
    scale = Fraction(1) / Fraction(lead)
    coeffs = [c * scale for c in coeffs]
    return Recurrence(coeffs)


def _nullspace(rows, ncols):
    """Canonical kernel basis of the row system, exact over the rationals.

    Basis vectors come one per free column, in ascending column order.
    """
    mat = [row for row in rows if any(row)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c]:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = Fraction(mat[r][c])
        if pv != 1:
            mat[r] = [x / pv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    pivot_set = set(pivots)
    basis = []
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for rowi, pc in enumerate(pivots):
            vec[pc] = -Fraction(mat[rowi][fc])
        basis.append(vec)
    return basis


# ----------------------------------------------------------------------
# generalized power sums
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralizedPowerSum:
    """a_n = sum_i A_i(n) alpha_i^n with distinct nonzero rational roots.

    coeff_polys[i] lists A_i's coefficients, constant term first; its length
    m_i determines the multiplicity of root i, and the order is sum m_i.
    """

    roots: tuple[Fraction, ...]
    coeff_polys: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        roots = tuple(Fraction(r) for r in self.roots)
        polys = tuple(tuple(Fraction(c) for c in p) for p in self.coeff_polys)
        object.__setattr__(self, "roots", roots)
        object.__setattr__(self, "coeff_polys", polys)
        if len(roots) != len(polys) or not roots:
            raise ValueError("need one coefficient polynomial per root")
        if any(r == 0 for r in roots):
            raise ValueError("roots must be nonzero")
        if len(set(roots)) != len(roots):
            raise ValueError("roots must be pairwise distinct")
        for p in polys:
            if not p or p[-1] == 0:
                raise ValueError("coefficient polynomials need a nonzero leading term")

    @property
    def order(self) -> int:
        return sum(len(p) for p in self.coeff_polys)


def gps_eval(g: GeneralizedPowerSum, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = Fraction(0)
    for root, poly in zip(g.roots, g.coeff_polys):
        a = Fraction(0)
        for c in reversed(poly):
            a = a * n + c
        total += a * root ** n
    return total


def gps_to_recurrence(g: GeneralizedPowerSum) -> Recurrence:
    """The order-d recurrence read off s(x) = prod (1 - alpha_i x)^{m_i}."""
    s = [Fraction(1)]
    for root, poly in zip(g.roots, g.coeff_polys):
        for _ in range(len(poly)):
            new = [Fraction(0)] * (len(s) + 1)
            for j, c in enumerate(s):
                new[j] += c
                new[j + 1] -= root * c
            s = new
    d = len(s) - 1
    coeffs = [LaurentPoly(0, {(): s[d - k]}) for k in range(d + 1)]
    return Recurrence(coeffs)


def annihilates_values(rec: Recurrence, values: Sequence[Fraction]) -> bool:
    """Annihilation check for a scalar sequence (vars-0 recurrence)."""
    d = rec.order
    cs = [c.coeff(()) for c in rec.coeffs]
    for n in range(len(values) - d):
        if sum(c * values[n + k] for k, c in enumerate(cs)) != 0:
            return False
    return True


# ----------------------------------------------------------------------
# trace sequences of matrices over Q(q)
# ----------------------------------------------------------------------

MatrixRF = "list[list[RatFn]]"


def _check_square(M) -> int:
    size = len(M)
    if size == 0 or any(len(row) != size for row in M):
        raise ValueError("matrix must be square and nonempty")
    for row in M:
        for entry in row:
            if not isinstance(entry, RatFn) or entry.vars != 1:
                raise ValueError("entries must be one-variable rational functions")
    return size


def _clear_matrix(M) -> tuple[list[list[LaurentPoly]], LaurentPoly]:
    """Write M = N / D with polynomial N and a single common denominator D."""
    size = len(M)
    D = LaurentPoly.const(1, 1)
    for row in M:
        for entry in row:
            den = entry.den
            g = univariate_gcd(D, den)
            extra = den.divexact(g) if g.degree_in(0) > 0 else den
            D = D * extra
    N = [[entry.num * D.divexact(entry.den) for entry in row] for row in M]
    return N, D


def _poly_matmul(A, B):
    size = len(A)
    return [
        [
            sum((A[i][k] * B[k][j] for k in range(size)), LaurentPoly.zero(1))
            for j in range(size)
        ]
        for i in range(size)
    ]


def _poly_trace(M) -> LaurentPoly:
    t = LaurentPoly.zero(1)
    for i in range(len(M)):
        t = t + M[i][i]
    return t


def trace_sequence(A, B, n_max: int) -> list[RatFn]:
    """tr(A B^n) for n = 0 .. n_max, by exact iterated multiplication."""
    sa = _check_square(A)
    sb = _check_square(B)
    if sa != sb:
        raise ValueError("matrices must have equal size")
    NA, dA = _clear_matrix(A)
    NB, dB = _clear_matrix(B)
    out = [RatFn(_poly_trace(NA), dA)]
    cur = NA
    den = dA
    for _ in range(n_max):
        cur = _poly_matmul(cur, NB)
        den = den * dB
        out.append(RatFn(_poly_trace(cur), den))
    return out


def char_poly_recurrence(B) -> Recurrence:
    """The Cayley-Hamilton recurrence annihilating n -> tr(A B^n) for any A.

    Coefficients are the z-coefficients of det(z D I - N) where B = N / D
    is denominator-cleared; this is det(z I - B) rescaled by the nonzero
    factor D^size, which leaves the annihilation property untouched while
    keeping the coefficients polynomial.
    """
    size = _check_square(B)
    NB, D = _clear_matrix(B)
    zD = D.insert_var(0).shift((1,) + (0,) * D.vars)
    M = []
    for i in range(size):
        row = []
        for j in range(size):
            entry = -NB[i][j].insert_var(0)
            if i == j:
                entry = entry + zD
            row.append(entry)
        M.append(row)
    det = bareiss_det(M)
    by_degree: dict[int, dict] = {k: {} for k in range(size + 1)}
    for e, c in det.terms.items():
        by_degree.setdefault(e[0], {})[e[1:]] = c
    coeffs = [LaurentPoly(1, by_degree.get(k, {})) for k in range(size + 1)]
    content = _joint_content(coeffs)
    if content not in (0, 1):
        scale = 1 / content
        coeffs = [c * scale for c in coeffs]
    _, lead = coeffs[-1].least_term_lex()
    if lead < 0:
        coeffs = [-c for c in coeffs]
    return Recurrence(coeffs, allow_zero_c0=True)


def _joint_content(coeffs) -> Fraction:
    num = 0
    den = 1
    for c in coeffs:
        for v in c.terms.values():
            num = _int_gcd(num, v.numerator)
            den = den * v.denominator // _int_gcd(den, v.denominator)
    return Fraction(num, den) if num else Fraction(0)


def matrix_to_json(M) -> list:
    return [[entry.to_json() for entry in row] for row in M]


def matrix_from_json(data) -> "list[list[RatFn]]":
    if not isinstance(data, list) or not data:
        raise ValueError("matrix JSON must be a nonempty row-major list")
    M = [[RatFn.from_json(e) for e in row] for row in data]
    _check_square(M)
    return M
