"""Detecting quasi-polynomial structure in exact sequences.

A quasi-polynomial of period M assigns one polynomial in n to each residue
class mod M, valid past a finite prefix.  Fitting is exact rational
interpolation with zero tolerance: each residue class is interpolated on its
first few usable points and then verified on every remaining point, and the
search returns the lexicographically smallest (period, prefix) that works.

The same machinery lifts to sequences of polytopes (one quasi-polynomial per
vertex coordinate per residue class, with the vertex count constant inside
each class), to the n-dependent shear that turns quasi-linear polygon
families into quasi-quadratic ones, and to zero-pattern detection in the
style of arithmetic-progressions-plus-finite-set.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from polyrec.polytope import Polytope

Value = "Fraction | int | None"


class InsufficientData(ValueError):
    pass


def _poly_eval(coeffs: Sequence[Fraction], n: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def _interpolate(points: Sequence[tuple[int, Fraction]]) -> tuple[Fraction, ...]:
    """Newton divided differences; returns monomial coefficients, constant first."""
    xs = [p[0] for p in points]
    coef = [Fraction(p[1]) for p in points]
    k = len(points)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form to monomial coefficients
    out = [Fraction(0)] * k
    for i in range(k - 1, -1, -1):
        # out = out * (n - xs[i]) + coef[i]
        carry = [Fraction(0)] * k
        for j in range(k - 1):
            carry[j + 1] += out[j]
            carry[j] -= out[j] * xs[i]
        carry[0] += coef[i]
        out = carry
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class QuasiPolynomial:
    """n -> residues[n mod period](n) for n >= prefix.

    A residue entry of None means the class carried no data (for example a
    residue class of zero polynomials whose valuation is undefined).
    """

    period: int
    prefix: int
    residues: tuple[Optional[tuple[Fraction, ...]], ...]

    def value(self, n: int) -> Optional[Fraction]:
        if n < self.prefix:
            raise ValueError("quasi-polynomial is not defined before its prefix")
        poly = self.residues[n % self.period]
        return None if poly is None else _poly_eval(poly, n)

    def degree(self) -> int:
        return max((len(p) - 1 for p in self.residues if p is not None), default=0)

    def slope(self, residue: int) -> Fraction:
        """Linear coefficient of one residue polynomial (0 when constant)."""
        poly = self.residues[residue % self.period]
        if poly is None:
            raise ValueError("residue class carries no polynomial")
        return poly[1] if len(poly) > 1 else Fraction(0)

    def intercept(self, residue: int) -> Fraction:
        poly = self.residues[residue % self.period]
        if poly is None:
            raise ValueError("residue class carries no polynomial")
        return poly[0]

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "prefix": self.prefix,
            "residues": [
                None if p is None else [str(c) for c in p] for p in self.residues
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "QuasiPolynomial":
        residues = tuple(
            None if p is None else tuple(Fraction(c) for c in p)
            for p in data["residues"]
        )
        return cls(int(data["period"]), int(data["prefix"]), residues)


def fit_quasipoly(
    seq: Sequence["Fraction | int | None"],
    deg_max: int,
    m_max: int,
    prefix_budget: int,
) -> Optional[QuasiPolynomial]:
    """Smallest (period, prefix) exact quasi-polynomial model of a sequence.

    ``None`` entries are treated as missing indices: they are neither fitted
    nor verified.  Each residue class is interpolated on its first
    deg_max + 1 usable points past the prefix and must reproduce all its
    remaining points exactly.
    """
    if deg_max < 0 or deg_max > 2:
        raise ValueError("deg_max must be 0, 1 or 2")
    n_top = len(seq) - 1
    if n_top < 2 * m_max * (deg_max + 2):
        raise InsufficientData(
            f"need indices up to {2 * m_max * (deg_max + 2)}, got {n_top}"
        )
    for period in range(1, m_max + 1):
        for prefix in range(prefix_budget + 1):
            model = _try_fit(seq, deg_max, period, prefix)
            if model is not None:
                return model
    return None


def _try_fit(seq, deg_max, period, prefix) -> Optional[QuasiPolynomial]:
    residues = []
    for r in range(period):
        pts = [
            (n, Fraction(seq[n]))
            for n in range(prefix + ((r - prefix) % period), len(seq), period)
            if seq[n] is not None
        ]
        if not pts:
            residues.append(None)
            continue
        head = pts[: deg_max + 1]
        poly = _interpolate(head)
        if len(poly) - 1 > deg_max:
            return None
        for n, v in pts[len(head):]:
            if _poly_eval(poly, n) != v:
                return None
        residues.append(poly)
    return QuasiPolynomial(period, prefix, tuple(residues))


# ----------------------------------------------------------------------
# polygon vertex models
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PolygonModel:
    """Per-residue vertex-coordinate model of a polytope sequence.

    residues[r] is a tuple over vertex slots (in canonical vertex order) of
    per-coordinate polynomial coefficient tuples, valid for n >= prefix with
    n = r mod period.
    """

    dim: int
    period: int
    prefix: int
    residues: tuple[tuple[tuple[tuple[Fraction, ...], ...], ...], ...]

    def polytope_at(self, n: int) -> Polytope:
        if n < self.prefix:
            raise ValueError("model is not defined before its prefix")
        slots = self.residues[n % self.period]
        verts = []
        for slot in slots:
            coords = []
            for poly in slot:
                v = _poly_eval(poly, n)
                if v.denominator != 1:
                    raise ValueError(f"model gives non-integer coordinate at n={n}")
                coords.append(int(v))
            verts.append(tuple(coords))
        return Polytope(self.dim, verts)

    def degree(self) -> int:
        return max(
            (len(poly) - 1 for slots in self.residues for slot in slots for poly in slot),
            default=0,
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "period": self.period,
            "prefix": self.prefix,
            "residues": [
                {
                    "vertices": [
                        [[str(c) for c in poly] for poly in slot] for slot in slots
                    ]
                }
                for slots in self.residues
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolygonModel":
        residues = tuple(
            tuple(
                tuple(tuple(Fraction(c) for c in poly) for poly in slot)
                for slot in entry["vertices"]
            )
            for entry in data["residues"]
        )
        return cls(int(data["dim"]), int(data["period"]), int(data["prefix"]), residues)


def fit_polygon_model(
    polys: Sequence[Polytope],
    deg_max: int,
    m_max: int,
    prefix_budget: int,
) -> Optional[PolygonModel]:
    """Smallest (period, prefix) vertex-coordinate model of a polytope sequence.

    Inside each residue class past the prefix the canonical vertex count must
    be constant and every vertex coordinate must follow one polynomial of
    degree <= deg_max, verified exactly on the whole class.
    """
    if deg_max not in (1, 2):
        raise ValueError("deg_max must be 1 or 2")
    if not polys:
        raise InsufficientData("no polytopes given")
    dim = polys[0].dim
    if any(p.dim != dim for p in polys):
        raise ValueError("polytopes must share a dimension")
    n_top = len(polys) - 1
    if n_top < 2 * m_max * (deg_max + 2):
        raise InsufficientData(
            f"need indices up to {2 * m_max * (deg_max + 2)}, got {n_top}"
        )
    for period in range(1, m_max + 1):
        for prefix in range(prefix_budget + 1):
            model = _try_fit_polygons(polys, dim, deg_max, period, prefix)
            if model is not None:
                return model
    return None


def _try_fit_polygons(polys, dim, deg_max, period, prefix) -> Optional[PolygonModel]:
    residues = []
    for r in range(period):
        ns = list(range(prefix + ((r - prefix) % period), len(polys), period))
        if not ns:
            return None
        counts = {len(polys[n].vertices) for n in ns}
        if len(counts) != 1:
            return None
        k = counts.pop()
        slots = []
        for slot in range(k):
            coords = []
            for c in range(dim):
                pts = [(n, Fraction(polys[n].vertices[slot][c])) for n in ns]
                head = pts[: deg_max + 1]
                poly = _interpolate(head)
                if len(poly) - 1 > deg_max:
                    return None
                for n, v in pts[len(head):]:
                    if _poly_eval(poly, n) != v:
                        return None
                coords.append(poly)
            slots.append(tuple(coords))
        residues.append(tuple(slots))
    return PolygonModel(dim, period, prefix, tuple(residues))


def shear_polygons(polys: Sequence[Polytope], f: int) -> list[Polytope]:
    """Apply the n-dependent unimodular map (a, b) -> (a - f^2 b n, b) to the
    polytope at index n, re-canonicalizing each result."""
    out = []
    for n, p in enumerate(polys):
        if p.dim != 2:
            raise ValueError("shear is defined for polytopes in the plane")
        if f == 0:
            out.append(p)
            continue
        mapped = [(a - f * f * b * n, b) for a, b in p.vertices]
        out.append(Polytope.from_points(2, mapped))
    return out


# ----------------------------------------------------------------------
# zero patterns
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroPattern:
    """Zeros of a sequence as full residue classes plus sporadic indices."""

    period: int
    prefix: int
    full_residues: frozenset[int]
    sporadic: frozenset[int]

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "prefix": self.prefix,
            "fullResidues": sorted(self.full_residues),
            "sporadic": sorted(self.sporadic),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ZeroPattern":
        return cls(
            int(data["period"]),
            int(data["prefix"]),
            frozenset(int(x) for x in data["fullResidues"]),
            frozenset(int(x) for x in data["sporadic"]),
        )


def zero_pattern(
    seq: Sequence["Fraction | int"],
    m_max: int,
    prefix_budget: int,
) -> ZeroPattern:
    """Describe the zero set as full arithmetic progressions plus a sporadic set.

    Returns the smallest period (then prefix) whose sporadic remainder fits in
    the budget; if no period manages that, the period minimizing the sporadic
    count wins.
    """
    n_top = len(seq) - 1
    if n_top < 4 * m_max:
        raise InsufficientData(f"need indices up to {4 * m_max}, got {n_top}")
    zeros = {n for n, v in enumerate(seq) if v == 0}
    best = None
    for period in range(1, m_max + 1):
        for prefix in range(prefix_budget + 1):
            full = set()
            for r in range(period):
                ns = range(prefix + ((r - prefix) % period), len(seq), period)
                if ns and all(n in zeros for n in ns):
                    full.add(r)
            sporadic = {n for n in zeros if n >= prefix and n % period not in full}
            cand = ZeroPattern(period, prefix, frozenset(full), frozenset(sporadic))
            if len(sporadic) <= prefix_budget:
                return cand
            if best is None or len(sporadic) < len(best.sporadic):
                best = cand
    return best
