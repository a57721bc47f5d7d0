"""Newton polytopes of Laurent polynomials in one or two variables.

Polytopes are stored by their canonically ordered integer vertex lists:
a one-dimensional polytope is the pair [min, max] (a single point if they
coincide), a two-dimensional one is the strictly convex vertex cycle in
counter-clockwise order starting at the lexicographically smallest vertex.
Collinear boundary points are never stored, so equal polytopes have equal
vertex lists.  All predicates are exact integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, floor, gcd
from typing import Iterable, Sequence

from polyrec.algebra import LaurentPoly


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2d(points: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone-chain convex hull, collinear points dropped, CCW order
    starting at the lexicographically smallest point."""
    pts = sorted(set(points))
    if len(pts) == 1:
        return pts
    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    if len(lower) == 2 and len(upper) == 2:
        # all points collinear: keep the two extreme points as a segment
        return [lower[0], lower[1]]
    return lower[:-1] + upper[:-1]


class Polytope:
    """Integer-vertex convex polytope of dimension 1 or 2."""

    __slots__ = ("dim", "vertices")

    def __init__(self, dim: int, vertices: Sequence[Sequence[int]]):
        if dim not in (1, 2):
            raise ValueError("only dimensions 1 and 2 are supported")
        verts = [tuple(int(x) for x in v) for v in vertices]
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != dim for v in verts):
            raise ValueError("vertex dimension mismatch")
        self.dim = dim
        self.vertices = tuple(verts)

    @classmethod
    def from_points(cls, dim: int, points: Iterable[Sequence[int]]) -> "Polytope":
        """Convex hull of a nonempty finite point set, canonically ordered."""
        pts = [tuple(int(x) for x in p) for p in points]
        if not pts:
            raise ValueError("cannot take the hull of an empty point set")
        if dim == 1:
            xs = [p[0] for p in pts]
            lo, hi = min(xs), max(xs)
            return cls(1, [(lo,)] if lo == hi else [(lo,), (hi,)])
        return cls(2, _hull2d(pts))

    @classmethod
    def newton(cls, p: LaurentPoly) -> "Polytope":
        """Newton polytope: the hull of the exponent vectors of p."""
        if p.is_zero:
            raise ValueError("the zero polynomial has no Newton polytope")
        if p.vars not in (1, 2):
            raise ValueError(
                "full hulls are computed for 1 or 2 variables; use directional "
                "support analysis for more"
            )
        return cls.from_points(p.vars, p.support())

    # ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={list(self.vertices)})"

    @property
    def is_point(self) -> bool:
        return len(self.vertices) == 1

    @property
    def is_segment(self) -> bool:
        return len(self.vertices) == 2

    # ------------------------------------------------------------------

    def support(self, u: Sequence[int]) -> int:
        """max of u.v over the vertices (the support function at u)."""
        uu = tuple(u)
        if len(uu) != self.dim:
            raise ValueError("direction dimension mismatch")
        if not any(uu):
            raise ValueError("direction must be nonzero")
        return max(sum(a * b for a, b in zip(uu, v)) for v in self.vertices)

    def project(self, omega: Sequence[int]) -> tuple[int, int]:
        """Projection onto the line R*omega: the segment
        [-support(-omega), support(omega)]."""
        w = tuple(omega)
        neg = tuple(-x for x in w)
        return -self.support(neg), self.support(w)

    def lattice_count(self) -> int:
        """Number of integer points in the polytope, boundary included."""
        if self.dim == 1:
            lo, hi = self.vertices[0][0], self.vertices[-1][0]
            return hi - lo + 1
        if self.is_point:
            return 1
        if self.is_segment:
            (ax, ay), (bx, by) = self.vertices
            return gcd(abs(bx - ax), abs(by - ay)) + 1
        verts = self.vertices
        edges = list(zip(verts, verts[1:] + verts[:1]))
        ymin = min(v[1] for v in verts)
        ymax = max(v[1] for v in verts)
        total = 0
        for y in range(ymin, ymax + 1):
            xs: list[Fraction] = []
            for (px, py), (qx, qy) in edges:
                if py == qy:
                    if py == y:
                        xs.append(Fraction(px))
                        xs.append(Fraction(qx))
                elif min(py, qy) <= y <= max(py, qy):
                    xs.append(Fraction(px) + Fraction((y - py) * (qx - px), qy - py))
            lo, hi = min(xs), max(xs)
            total += floor(hi) - ceil(lo) + 1
        return total

    def area(self) -> Fraction:
        """Shoelace area; zero for points and segments."""
        if self.dim == 1 or len(self.vertices) < 3:
            return Fraction(0)
        s = 0
        verts = self.vertices
        for (px, py), (qx, qy) in zip(verts, verts[1:] + verts[:1]):
            s += px * qy - qx * py
        return Fraction(abs(s), 2)

    def boundary_lattice_count(self) -> int:
        """Lattice points on the boundary (all points for segments/points)."""
        if self.dim == 1:
            return self.lattice_count()
        if self.is_point:
            return 1
        if self.is_segment:
            return self.lattice_count()
        verts = self.vertices
        return sum(
            gcd(abs(qx - px), abs(qy - py))
            for (px, py), (qx, qy) in zip(verts, verts[1:] + verts[:1])
        )

    def minkowski_sum(self, other: "Polytope") -> "Polytope":
        """Minkowski sum, computed by hulling all pairwise vertex sums."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        pts = [
            tuple(a + b for a, b in zip(u, v))
            for u in self.vertices
            for v in other.vertices
        ]
        return Polytope.from_points(self.dim, pts)

    def translate(self, shift: Sequence[int]) -> "Polytope":
        s = tuple(shift)
        return Polytope(self.dim, [tuple(a + b for a, b in zip(v, s)) for v in self.vertices])

    # ------------------------------------------------------------------

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "Polytope":
        if not isinstance(data, dict) or "dim" not in data or "vertices" not in data:
            raise ValueError("polytope JSON must have 'dim' and 'vertices'")
        dim = data["dim"]
        verts = data["vertices"]
        if not isinstance(verts, list) or not verts:
            raise ValueError("'vertices' must be a nonempty list")
        # re-canonicalize on input so hand-written files are accepted
        return cls.from_points(dim, verts)


def newton_polytope(p: LaurentPoly) -> Polytope:
    return Polytope.newton(p)
