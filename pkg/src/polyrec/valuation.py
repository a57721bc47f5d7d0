"""Degree slopes of recurrence terms, predicted from the characteristic polynomial.

Writing the characteristic polynomial as p(z, x) with z the recursion variable,
the minimum degrees of its roots (as Puiseux series in a direction omega) are
read off the lower Newton polygon of the points (z-degree, min weighted
x-degree); maximum degrees come from the upper polygon.  The generated terms'
degree sequences must grow with slopes drawn from this spectrum, which is the
finite-horizon check implemented here.

For two x-variables the direction space splits into a fan of cones on which
the spectrum is a fixed linear function of omega.  The fan's rays are found
exactly from pairwise/triple tie loci of the polygon construction and filtered
by comparing the polygon's combinatorial type on both sides of each candidate.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from polyrec.algebra import LaurentPoly
from polyrec.quasifit import QuasiPolynomial, fit_quasipoly
from polyrec.recurrence import Recurrence, TermSequence, generate_terms


@dataclass(frozen=True)
class SlopeSpectrum:
    """Strictly increasing candidate slopes with multiplicities summing to the
    z-degree of the characteristic polynomial."""

    slopes: tuple[Fraction, ...]
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        if len(self.slopes) != len(self.multiplicities):
            raise ValueError("slopes and multiplicities must align")
        if any(self.slopes[i] >= self.slopes[i + 1] for i in range(len(self.slopes) - 1)):
            raise ValueError("slopes must be strictly increasing")
        if any(m <= 0 for m in self.multiplicities):
            raise ValueError("multiplicities must be positive")

    def __contains__(self, slope) -> bool:
        return Fraction(slope) in self.slopes

    def witness(self, slope) -> Optional[int]:
        s = Fraction(slope)
        return self.slopes.index(s) if s in self.slopes else None

    @property
    def order(self) -> int:
        return sum(self.multiplicities)

    def to_json(self) -> dict:
        return {
            "slopes": [str(s) for s in self.slopes],
            "multiplicities": list(self.multiplicities),
        }


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chain(points, lower: bool):
    hull = []
    for p in points:
        if lower:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
                hull.pop()
        else:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0:
                hull.pop()
        hull.append(p)
    return hull


def _slice_extremes(char_poly: LaurentPoly, omega: Sequence[int], minimize: bool):
    """Per z-degree: extreme weighted x-degree and the monomial attaining it."""
    w = tuple(omega)
    if len(w) != char_poly.vars - 1:
        raise ValueError("direction dimension must match the x-variables")
    if not any(w):
        raise ValueError("direction vector must be nonzero")
    slices: dict[int, tuple[int, tuple[int, ...]]] = {}
    for e in char_poly.terms:
        beta = e[0]
        alpha = e[1:]
        val = sum(a * b for a, b in zip(w, alpha))
        cur = slices.get(beta)
        better = cur is None or (val < cur[0] if minimize else val > cur[0])
        if better or (cur is not None and val == cur[0] and alpha < cur[1]):
            slices[beta] = (val, alpha)
    return sorted((beta, vw[0], vw[1]) for beta, vw in slices.items())


def root_valuations(char_poly: LaurentPoly, omega: Sequence[int], side: str) -> SlopeSpectrum:
    """Valuations of the characteristic roots in direction omega.

    side="vstar" gives minimum degrees (negated slopes of the lower polygon
    of (z-degree, min weighted degree) points, multiplicity = edge width);
    side="v" gives maximum degrees from the upper polygon of the maxima.
    """
    if side not in ("vstar", "v"):
        raise ValueError("side must be 'vstar' or 'v'")
    if char_poly.vars < 2:
        raise ValueError("characteristic polynomial needs z plus at least one x")
    if char_poly.is_zero:
        raise ValueError("zero polynomial")
    zlo = char_poly.valuation_in(0)
    zhi = char_poly.degree_in(0)
    if zhi == zlo:
        raise ValueError("the recursion variable z is absent")
    minimize = side == "vstar"
    data = _slice_extremes(char_poly, omega, minimize)
    points = [(beta, val) for beta, val, _ in data]
    hull = _chain(points, lower=minimize)
    out = []
    for (b1, v1), (b2, v2) in zip(hull, hull[1:]):
        out.append((Fraction(-(v2 - v1), b2 - b1), b2 - b1))
    out.sort()
    return SlopeSpectrum(tuple(s for s, _ in out), tuple(m for _, m in out))


# ----------------------------------------------------------------------
# the linearity fan (two x-variables)
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Fan2D:
    """Primitive ray directions, sorted by angle, cutting the plane into
    cones on which root valuations are linear in the direction."""

    rays: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays]}


def _primitive(v: tuple[int, int]) -> tuple[int, int]:
    g = gcd(abs(v[0]), abs(v[1]))
    return (v[0] // g, v[1] // g)


def _angle_cmp(u, v) -> int:
    def half(p):
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = u[0] * v[1] - u[1] * v[0]
    return 0 if c == 0 else (-1 if c > 0 else 1)


def _hull_type(char_poly: LaurentPoly, omega) -> tuple:
    """Combinatorial type of both Newton polygons at a generic direction."""
    out = []
    for minimize in (True, False):
        data = _slice_extremes(char_poly, omega, minimize)
        points = [(beta, val) for beta, val, _ in data]
        attain = {beta: alpha for beta, _, alpha in data}
        hull = _chain(points, lower=minimize)
        out.append(tuple((beta, attain[beta]) for beta, _ in hull))
    return tuple(out)


def slope_fan(char_poly: LaurentPoly) -> Fan2D:
    """The fan of directions on which the slope spectra are linear (r = 2).

    Candidate rays are the exact tie loci of the polygon construction:
    perpendiculars of exponent differences within one z-slice, and
    perpendiculars of the collinearity forms of slice triples.  A candidate
    survives only if the polygon's combinatorial type actually changes
    across it.
    """
    if char_poly.vars != 3:
        raise ValueError("the slope fan is computed for two x-variables")
    zhi = char_poly.degree_in(0)
    zlo = char_poly.valuation_in(0)
    if char_poly.is_zero or zhi == zlo:
        raise ValueError("the recursion variable z is absent or trivial")
    slices: dict[int, list[tuple[int, int]]] = {}
    for e in char_poly.terms:
        slices.setdefault(e[0], []).append(e[1:])
    candidates: set[tuple[int, int]] = set()

    def add_locus(d: tuple[int, int]):
        if d == (0, 0):
            return
        ray = _primitive((-d[1], d[0]))
        candidates.add(ray)
        candidates.add((-ray[0], -ray[1]))

    for alphas in slices.values():
        for i in range(len(alphas)):
            for j in range(i + 1, len(alphas)):
                a, b = alphas[i], alphas[j]
                add_locus((a[0] - b[0], a[1] - b[1]))
    betas = sorted(slices)
    for i in range(len(betas)):
        for j in range(i + 1, len(betas)):
            for k in range(j + 1, len(betas)):
                b1, b2, b3 = betas[i], betas[j], betas[k]
                for a1 in slices[b1]:
                    for a2 in slices[b2]:
                        for a3 in slices[b3]:
                            t = (
                                (a2[0] - a1[0]) * (b3 - b1) - (a3[0] - a1[0]) * (b2 - b1),
                                (a2[1] - a1[1]) * (b3 - b1) - (a3[1] - a1[1]) * (b2 - b1),
                            )
                            add_locus(t)
    if not candidates:
        return Fan2D(())
    rays = sorted(candidates, key=functools.cmp_to_key(_angle_cmp))
    # representative direction strictly inside each gap between adjacent rays
    reps = []
    m = len(rays)
    for i in range(m):
        u = rays[i]
        v = rays[(i + 1) % m]
        if (u[0] + v[0], u[1] + v[1]) == (0, 0):
            reps.append((-u[1], u[0]))
        else:
            reps.append((u[0] + v[0], u[1] + v[1]))
    types = [_hull_type(char_poly, rep) for rep in reps]
    kept = []
    for i in range(m):
        before = types[(i - 1) % m]
        after = types[i]
        if before != after:
            kept.append(rays[i])
    return Fan2D(tuple(kept))


# ----------------------------------------------------------------------
# empirical check: generated terms against the predicted spectrum
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueSlopeReport:
    residue: int
    slope: Fraction
    intercept: Fraction
    witness: Optional[int]
    member: bool

    def to_json(self) -> dict:
        return {
            "residue": self.residue,
            "slope": str(self.slope),
            "intercept": str(self.intercept),
            "witness": self.witness,
            "member": self.member,
        }


@dataclass(frozen=True)
class SideReport:
    side: str
    spectrum: SlopeSpectrum
    fit: Optional[QuasiPolynomial]
    residues: tuple[ResidueSlopeReport, ...]

    @property
    def all_member(self) -> bool:
        return self.fit is not None and all(r.member for r in self.residues)

    def to_json(self) -> dict:
        return {
            "side": self.side,
            "spectrum": self.spectrum.to_json(),
            "fit": None if self.fit is None else self.fit.to_json(),
            "residues": [r.to_json() for r in self.residues],
        }


@dataclass(frozen=True)
class EmpiricalReport:
    omega: tuple[int, ...]
    vstar: SideReport
    v: SideReport
    holdout_exact: Optional[bool]
    zero_indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "omega": list(self.omega),
            "vstar": self.vstar.to_json(),
            "v": self.v.to_json(),
            "holdoutExact": self.holdout_exact,
            "zeroIndices": list(self.zero_indices),
        }


def _term_valuations(terms: TermSequence, omega) -> tuple[list, list]:
    """Weighted min/max degree of each term; None where a term vanishes."""
    vstar_seq: list = []
    v_seq: list = []
    if terms.fractions is not None:
        for f in terms.fractions:
            if f.is_zero:
                vstar_seq.append(None)
                v_seq.append(None)
                continue
            nlo, nhi = f.num.specialize(omega).valuations()
            dlo, dhi = f.den.specialize(omega).valuations()
            vstar_seq.append(nlo - dlo)
            v_seq.append(nhi - dhi)
        return vstar_seq, v_seq
    for p in terms.polys:
        if p.is_zero:
            vstar_seq.append(None)
            v_seq.append(None)
            continue
        u = p.specialize(omega)
        if u.is_zero:
            vstar_seq.append(None)
            v_seq.append(None)
            continue
        lo, hi = u.valuations()
        vstar_seq.append(lo)
        v_seq.append(hi)
    return vstar_seq, v_seq


def predicted_vs_empirical(
    rec: Recurrence,
    init: Sequence[LaurentPoly],
    omega: Sequence[int],
    n_max: int,
    *,
    deg_max: int = 1,
    m_max: int = 6,
    prefix_budget: int = 8,
    fit_upto: Optional[int] = None,
    terms: Optional[TermSequence] = None,
) -> EmpiricalReport:
    """Generate terms, fit their degree growth, and check every fitted slope
    against the spectrum predicted by the characteristic polynomial.

    ``fit_upto`` restricts the fit window; indices beyond it are then used as
    an exact holdout check.  Pass ``terms`` to reuse an existing generation.
    """
    omega = tuple(omega)
    if terms is None:
        terms = generate_terms(rec, init, n_max)
    vstar_seq, v_seq = _term_valuations(terms, omega)
    zero_indices = tuple(n for n, v in enumerate(vstar_seq) if v is None)
    char = rec.char_poly()
    cut = n_max if fit_upto is None else fit_upto
    holdout: Optional[bool] = None
    sides = []
    for side, seq in (("vstar", vstar_seq), ("v", v_seq)):
        spectrum = root_valuations(char, omega, side)
        fit = fit_quasipoly(seq[: cut + 1], deg_max, m_max, prefix_budget)
        residues = []
        if fit is not None:
            for r in range(fit.period):
                if fit.residues[r] is None:
                    continue
                slope = fit.slope(r)
                wit = spectrum.witness(slope)
                residues.append(
                    ResidueSlopeReport(r, slope, fit.intercept(r), wit, wit is not None)
                )
            if fit_upto is not None:
                ok = True
                for n in range(cut + 1, n_max + 1):
                    actual = seq[n]
                    if actual is None:
                        continue  # vanished term: no degree to predict
                    if (
                        fit.residues[n % fit.period] is None
                        or fit.value(n) != Fraction(actual)
                    ):
                        ok = False
                        break
                holdout = ok if holdout is None else (holdout and ok)
        sides.append(SideReport(side, spectrum, fit, tuple(residues)))
    return EmpiricalReport(omega, sides[0], sides[1], holdout, zero_indices)
