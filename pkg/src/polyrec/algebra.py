"""Exact sparse Laurent-polynomial arithmetic over the rationals.

A Laurent polynomial in r variables is a finite map from exponent vectors
(tuples of r signed integers) to nonzero rational coefficients.  The zero
polynomial is the empty map.  Coefficients are stored as plain ``int`` when
integral and as ``fractions.Fraction`` otherwise; the two interoperate
transparently and compare equal, so callers never need to care.

Univariate products take a dense fast path: coefficient lists of machine
integers, switching to Kronecker substitution (packing the coefficients of
each factor into one big integer and doing a single big-integer multiply)
once the schoolbook cost gets large.  Everything stays exact.

``RatFn`` is a quotient of Laurent polynomials.  One-variable quotients are
kept fully reduced (the gcd of numerator and denominator is a unit), which
is what the trace-sequence machinery relies on; quotients in two or more
variables are only normalized by integer content and sign, since full
reduction would need multivariate gcd.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Mapping, Sequence

ExpVec = tuple[int, ...]

# Switch univariate products to Kronecker packing above this schoolbook cost.
_KRONECKER_CUTOFF = 1024


def _norm_coeff(c):
    """Collapse integral Fractions to int; reject non-rational input."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):  # bool and int subclasses
        return int(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class LaurentPoly:
    """A sparse Laurent polynomial with exact rational coefficients.

    Instances are immutable by convention: no method mutates ``terms`` after
    construction, so values can be shared freely between workers.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, nvars: int, terms: Mapping[ExpVec, "int | Fraction"] | None = None):
        if nvars < 0:
            raise ValueError("variable count must be nonnegative")
        self.vars = nvars
        clean: dict[ExpVec, int | Fraction] = {}
        if terms:
            for exps, c in terms.items():
                e = tuple(exps)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has length {len(e)}, expected {nvars}")
                c = _norm_coeff(c)
                if c:
                    clean[e] = c
        self.terms = clean

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, value) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> "LaurentPoly":
        """The monomial x_index**power (power may be negative)."""
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = power
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, nvars: int, coeff, exps: Sequence[int]) -> "LaurentPoly":
        return cls(nvars, {tuple(exps): coeff})

    # ------------------------------------------------------------------
    # basic structure
    # ------------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def support(self) -> list[ExpVec]:
        return list(self.terms)

    def sorted_terms(self) -> list[tuple[ExpVec, "int | Fraction"]]:
        return sorted(self.terms.items())

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def leading_term_lex(self) -> tuple[ExpVec, "int | Fraction"]:
        """Term with the lexicographically greatest exponent vector."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms)
        return e, self.terms[e]

    def least_term_lex(self) -> tuple[ExpVec, "int | Fraction"]:
        if not self.terms:
            raise ValueError("zero polynomial has no least term")
        e = min(self.terms)
        return e, self.terms[e]

    def degree_in(self, index: int) -> int:
        """Maximum exponent of variable ``index`` (0 for the zero poly)."""
        if not self.terms:
            return 0
        return max(e[index] for e in self.terms)

    def valuation_in(self, index: int) -> int:
        if not self.terms:
            return 0
        return min(e[index] for e in self.terms)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------

    def _check_compat(self, other: "LaurentPoly") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable-count mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_compat(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _norm_coeff(other)
            if not c:
                return LaurentPoly.zero(self.vars)
            return _raw(self.vars, {e: _norm_coeff(v * c) for e, v in self.terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_compat(other)
        if not self.terms or not other.terms:
            return LaurentPoly.zero(self.vars)
        if self.vars == 1:
            return _mul_univariate(self, other)
        return _mul_generic(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of polynomial by zero scalar")
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = LaurentPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(self.vars, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # ------------------------------------------------------------------
    # the operations the rest of the package is built from
    # ------------------------------------------------------------------

    def evaluate(self, point: Sequence["int | Fraction"]) -> Fraction:
        """Exact value at a point with nonzero coordinates (Laurent exponents
        may be negative)."""
        if len(point) != self.vars:
            raise ValueError("point dimension mismatch")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = Fraction(c)
            for exp, v in zip(exps, vals):
                if exp:
                    term *= v ** exp
            total += term
        return total

    def specialize(self, omega: Sequence[int]) -> "LaurentPoly":
        """Substitute x_i -> t**omega_i, returning a univariate polynomial in t.

        Terms whose weighted exponents collide are summed and may cancel.
        """
        w = tuple(omega)
        if len(w) != self.vars:
            raise ValueError("direction dimension mismatch")
        if not any(w):
            raise ValueError("direction vector must be nonzero")
        out: dict[ExpVec, int | Fraction] = {}
        for exps, c in self.terms.items():
            k = sum(wi * ei for wi, ei in zip(w, exps))
            s = out.get((k,), 0) + c
            if s:
                out[(k,)] = s
            else:
                out.pop((k,), None)
        return _raw(1, out)

    def power_subst(self, index: int, n: int) -> "LaurentPoly":
        """Scale every exponent of variable ``index`` by n (x_i -> x_i**n)."""
        if not 0 <= index < self.vars:
            raise ValueError(f"variable index {index} out of range")
        if n == 1:
            return self
        out = {}
        for exps, c in self.terms.items():
            e = list(exps)
            e[index] *= n
            out[tuple(e)] = c
        return _raw(self.vars, out)

    def valuations(self) -> tuple[int, int]:
        """(minimum exponent, maximum exponent) of a nonzero one-variable poly.

        The Newton polytope of a univariate Laurent polynomial is the segment
        between these two numbers.
        """
        if self.vars != 1:
            raise ValueError("valuations are defined for one-variable polynomials")
        if not self.terms:
            raise ValueError("valuations of the zero polynomial are undefined")
        exps = [e[0] for e in self.terms]
        return min(exps), max(exps)

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x**exps (exact, unit of the Laurent ring)."""
        d = tuple(exps)
        if len(d) != self.vars:
            raise ValueError("shift dimension mismatch")
        if not any(d):
            return self
        return _raw(self.vars, {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()})

    def drop_var(self, index: int) -> "LaurentPoly":
        """Remove a variable in which every exponent is zero."""
        if not 0 <= index < self.vars:
            raise ValueError("variable index out of range")
        out = {}
        for exps, c in self.terms.items():
            if exps[index] != 0:
                raise ValueError(f"variable {index} occurs with nonzero exponent")
            out[exps[:index] + exps[index + 1 :]] = c
        return _raw(self.vars - 1, out)

    def insert_var(self, index: int) -> "LaurentPoly":
        """Add a fresh variable (exponent 0 everywhere) at position ``index``."""
        if not 0 <= index <= self.vars:
            raise ValueError("insertion index out of range")
        return _raw(
            self.vars + 1,
            {e[:index] + (0,) + e[index:]: c for e, c in self.terms.items()},
        )

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-primitive (0 for zero)."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = _int_gcd(num, c.numerator)
            den = den * c.denominator // _int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "LaurentPoly":
        """self divided by its content; sign fixed so the lex-least term is positive."""
        if not self.terms:
            return self
        c = self.content()
        if self.terms[min(self.terms)] < 0:
            c = -c
        inv = 1 / c
        return _raw(self.vars, {e: _norm_coeff(v * inv) for e, v in self.terms.items()})

    def divexact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError when divisor does not divide self."""
        self._check_compat(divisor)
        if not divisor.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return LaurentPoly.zero(self.vars)
        # Normalize both to ordinary polynomials (min exponent 0 per variable);
        # exact divisibility is unaffected by Laurent units.
        r = self.vars
        smin = [min(e[i] for e in self.terms) for i in range(r)]
        dmin = [min(e[i] for e in divisor.terms) for i in range(r)]
        a = self.shift([-m for m in smin])
        b = divisor.shift([-m for m in dmin])
        rem = dict(a.terms)
        blead = max(b.terms)
        bc = b.terms[blead]
        bitems = list(b.terms.items())
        qterms: dict[ExpVec, int | Fraction] = {}
        while rem:
            e = max(rem)
            qe = tuple(x - y for x, y in zip(e, blead))
            if any(x < 0 for x in qe):
                raise ValueError("not exactly divisible")
            qc = _norm_coeff(Fraction(rem[e]) / Fraction(bc))
            qterms[qe] = qc
            for be, bv in bitems:
                t = tuple(x + y for x, y in zip(qe, be))
                s = rem.get(t, 0) - qc * bv
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        q = _raw(self.vars, qterms)
        return q.shift([s - d for s, d in zip(smin, dmin)])

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_json(self) -> dict:
        """{"vars": r, "terms": [[numStr, denStr, [e1,...,er]], ...]}, terms in
        lexicographic exponent order for byte-stable output."""
        return {
            "vars": self.vars,
            "terms": [
                [str(c.numerator), str(c.denominator), list(e)]
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        if not isinstance(data, dict) or "vars" not in data or "terms" not in data:
            raise ValueError("polynomial JSON must have 'vars' and 'terms'")
        nvars = data["vars"]
        if not isinstance(nvars, int) or nvars < 0:
            raise ValueError("'vars' must be a nonnegative integer")
        terms: dict[ExpVec, int | Fraction] = {}
        for entry in data["terms"]:
            if len(entry) != 3:
                raise ValueError("each term must be [num, den, exps]")
            num, den, exps = entry
            e = tuple(exps)
            if len(e) != nvars or not all(isinstance(x, int) for x in e):
                raise ValueError(f"bad exponent vector {exps}")
            c = Fraction(int(num), int(den))
            if e in terms:
                raise ValueError(f"duplicate exponent {exps}")
            terms[e] = c
        return cls(nvars, terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i}" if p == 1 else f"x{i}^{p}" for i, p in enumerate(e) if p
            )
            if mono:
                parts.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                parts.append(str(c))
        return " + ".join(parts)


def _raw(nvars: int, terms: dict) -> LaurentPoly:
    """Build a LaurentPoly from an already-normalized term dict (internal)."""
    p = object.__new__(LaurentPoly)
    p.vars = nvars
    p.terms = terms
    return p


# ----------------------------------------------------------------------
# multiplication kernels
# ----------------------------------------------------------------------


def _mul_generic(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    out: dict[ExpVec, int | Fraction] = {}
    small, big = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    big_items = list(big.items())
    for ea, ca in small.items():
        for eb, cb in big_items:
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return _raw(a.vars, {e: _norm_coeff(c) for e, c in out.items()})


def _mul_univariate(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    amin, alist = _dense_coeffs(a)
    bmin, blist = _dense_coeffs(b)
    if all(type(c) is int for c in alist) and all(type(c) is int for c in blist):
        prod = _dense_mul_int(alist, blist)
    else:
        prod = _dense_mul_schoolbook(alist, blist)
    base = amin + bmin
    return _raw(1, {(base + i,): _norm_coeff(c) for i, c in enumerate(prod) if c})


def _dense_coeffs(p: LaurentPoly) -> tuple[int, list]:
    exps = [e[0] for e in p.terms]
    lo, hi = min(exps), max(exps)
    out = [0] * (hi - lo + 1)
    for e, c in p.terms.items():
        out[e[0] - lo] = c
    return lo, out


def _dense_mul_schoolbook(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _dense_mul_int(a: list[int], b: list[int]) -> list[int]:
    if len(a) * len(b) <= _KRONECKER_CUTOFF:
        return _dense_mul_schoolbook(a, b)
    return _kronecker_mul(a, b)


def _kronecker_mul(a: list[int], b: list[int]) -> list[int]:
    """Exact signed integer-polynomial product via Kronecker substitution.

    The factors are split into nonnegative and negative parts so that the
    packed big-integer products never see carries between coefficient slots.
    """
    n = len(a) + len(b) - 1
    amax = max(abs(c) for c in a)
    bmax = max(abs(c) for c in b)
    # Coefficient bound for each of the two packed sums of products below.
    bound = 2 * amax * bmax * min(len(a), len(b)) + 1
    width = (bound.bit_length() + 7) // 8
    ap, an = _split_signs(a)
    bp, bn = _split_signs(b)
    pos = _pack(ap, width) * _pack(bp, width) + _pack(an, width) * _pack(bn, width)
    neg = _pack(ap, width) * _pack(bn, width) + _pack(an, width) * _pack(bp, width)
    pu = _unpack(pos, width, n)
    nu = _unpack(neg, width, n)
    return [p - q for p, q in zip(pu, nu)]


def _split_signs(a: list[int]) -> tuple[list[int], list[int]]:
    pos = [c if c > 0 else 0 for c in a]
    neg = [-c if c < 0 else 0 for c in a]
    return pos, neg


def _pack(coeffs: list[int], width: int) -> int:
    return int.from_bytes(
        b"".join(c.to_bytes(width, "little") for c in coeffs), "little"
    )


def _unpack(value: int, width: int, count: int) -> list[int]:
    raw = value.to_bytes(width * count + width, "little")
    return [
        int.from_bytes(raw[i * width : (i + 1) * width], "little")
        for i in range(count)
    ]


# ----------------------------------------------------------------------
# univariate gcd (used by RatFn reduction)
# ----------------------------------------------------------------------

# Primes for the modular coprimality fast path; all comfortably above any
# plausible leading coefficient in tests while keeping arithmetic on ints.
_GCD_PRIMES = (2305843009213693951, 4611686018427387847, 9223372036854775783)


def _int_clear(coeffs: list) -> list[int]:
    den = 1
    for c in coeffs:
        d = c.denominator
        den = den * d // _int_gcd(den, d)
    return [int(c * den) if den != 1 else int(c) for c in coeffs]


def _int_primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = _int_gcd(g, c)
        if g == 1:
            return coeffs
    return [c // g for c in coeffs] if g > 1 else coeffs


def _gcd_mod_degree(a: list[int], b: list[int], p: int) -> int | None:
    """Degree of gcd(a mod p, b mod p), or None if p kills a leading coeff.

    Since the true gcd of primitive integer polynomials has degree at most
    that of any such modular gcd, degree 0 here certifies coprimality.
    """
    if a[-1] % p == 0 or b[-1] % p == 0:
        return None
    fa = [c % p for c in a]
    fb = [c % p for c in b]
    while fb:
        if len(fa) < len(fb):
            fa, fb = fb, fa
            continue
        inv = pow(fb[-1], p - 2, p)
        while len(fa) >= len(fb):
            if fa[-1]:
                f = fa[-1] * inv % p
                off = len(fa) - len(fb)
                for i in range(len(fb) - 1):
                    fa[off + i] = (fa[off + i] - f * fb[i]) % p
            fa.pop()
            while fa and not fa[-1]:
                fa.pop()
        fa, fb = fb, fa
    return len(fa) - 1


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b over Z, up to a power of lc(b)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db:
        lead = r.pop()
        r = [lb * c for c in r]
        off = len(r) - db
        for i in range(db):
            r[off + i] -= lead * b[i]
        while r and not r[-1]:
            r.pop()
    return r


def _primitive_prs_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive pseudo-remainder-sequence gcd of primitive int polynomials."""
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        a, b = b, _int_primitive(_pseudo_rem(a, b))
    return a


def univariate_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd of one-variable Laurent polynomials, canonical up to units.

    The result is an ordinary polynomial (minimum exponent 0), integer
    primitive, with positive lowest coefficient.  A fast modular check
    certifies the common case gcd = 1 without any rational arithmetic.
    """
    if a.vars != 1 or b.vars != 1:
        raise ValueError("univariate_gcd needs one-variable polynomials")
    if not a.terms:
        return _shift_primitive(b)
    if not b.terms:
        return _shift_primitive(a)
    fa = _int_primitive(_int_clear(_dense_coeffs(a)[1]))
    fb = _int_primitive(_int_clear(_dense_coeffs(b)[1]))
    for p in _GCD_PRIMES:
        d = _gcd_mod_degree(fa, fb, p)
        if d is not None:
            if d == 0:
                return LaurentPoly.const(1, 1)
            break
    g = _int_primitive(_primitive_prs_gcd(fa, fb))
    lo = next(i for i, c in enumerate(g) if c)
    g = g[lo:]
    if g[0] < 0:
        g = [-c for c in g]
    return _raw(1, {(i,): c for i, c in enumerate(g) if c})


def _shift_primitive(p: LaurentPoly) -> LaurentPoly:
    if not p.terms:
        return p
    lo = p.valuations()[0]
    return p.shift((-lo,)).primitive()


# ----------------------------------------------------------------------
# rational functions
# ----------------------------------------------------------------------


class RatFn:
    """A quotient of Laurent polynomials.

    One-variable quotients are value-faithful and fully reduced: the
    denominator is an ordinary integer-primitive polynomial with positive
    lowest coefficient, and gcd(num, den) is a unit.  Quotients in several
    variables are normalized to integer-primitive numerator and denominator
    with a positive lex-least denominator term -- canonical only up to
    common polynomial factors and a rational scale, which is all the
    elimination pipeline needs (divisibility and Newton polytopes are scale
    insensitive).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = LaurentPoly.const(num.vars, 1)
        if num.vars != den.vars:
            raise ValueError("numerator/denominator variable-count mismatch")
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        if reduce:
            num, den = _ratfn_normalize(num, den)
        self.num = num
        self.den = den

    @property
    def vars(self) -> int:
        return self.num.vars

    @classmethod
    def from_const(cls, nvars: int, value) -> "RatFn":
        return cls(LaurentPoly.const(nvars, value))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self) -> bool:
        return bool(self.num)

    @property
    def is_polynomial(self) -> bool:
        return self.den == LaurentPoly.const(self.vars, 1)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFn(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFn(self.num * other.den, self.den * other.num)

    def _coerce(self, other):
        if isinstance(other, RatFn):
            return other
        if isinstance(other, LaurentPoly):
            return RatFn(other, reduce=False)
        if isinstance(other, (int, Fraction)):
            return RatFn.from_const(self.vars, other)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(point) / d

    def to_json(self) -> list:
        return [self.num.to_json(), self.den.to_json()]

    @classmethod
    def from_json(cls, data) -> "RatFn":
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            raise ValueError("rational function JSON must be a [num, den] pair")
        return cls(LaurentPoly.from_json(data[0]), LaurentPoly.from_json(data[1]))

    def __repr__(self):
        if self.is_polynomial:
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def _ratfn_normalize(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero:
        return num, LaurentPoly.const(num.vars, 1)
    r = num.vars
    if r == 1:
        g = univariate_gcd(num, den)
        if g.degree_in(0) > 0:
            num = num.divexact(g)
            den = den.divexact(g)
        # push the Laurent-unit part of the denominator into the numerator
        lo = den.valuations()[0]
        if lo:
            den = den.shift((-lo,))
            num = num.shift((-lo,))
        # scalar normalization keeping integer coefficients: write the value
        # as (s/t) * (primitive num)/(primitive den) with den sign positive,
        # then fold the reduced scale back in on both sides.
        s = num.content()
        if num.terms[min(num.terms)] < 0:
            s = -s
        t = den.content()
        if den.terms[min(den.terms)] < 0:
            t = -t
        scale = s / t
        num = num * (1 / s) * scale.numerator
        den = den * (1 / t) * scale.denominator
        return num, den
    if r >= 2:
        # canonical up to common polynomial factors: primitive parts only
        nmin = [num.valuation_in(i) for i in range(r)]
        dmin = [den.valuation_in(i) for i in range(r)]
        num = num.shift([-m for m in nmin])
        den = den.shift([-m for m in dmin])
        den_c = den.content()
        if den.terms[min(den.terms)] < 0:
            den_c = -den_c
        den = den * (1 / den_c)
        num_c = num.content()
        if num_c not in (0, 1):
            num = num * (1 / num_c)
        return num, den
    # r == 0: scalars
    dval = den.coeff(())
    return num * (1 / Fraction(dval)), LaurentPoly.const(0, 1)


# ----------------------------------------------------------------------
# fraction-free elimination
# ----------------------------------------------------------------------


def bareiss_det(matrix: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Determinant of a square polynomial matrix by Bareiss elimination.

    Every division along the way is exact in the polynomial ring, so entries
    never leave it and intermediate growth stays under control.  Row swaps
    (with sign tracking) handle zero pivots.
    """
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix has no determinant here")
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix must be square")
    nvars = matrix[0][0].vars
    m = [list(row) for row in matrix]
    sign = 1
    prev = LaurentPoly.const(nvars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            for i in range(k + 1, n):
                if not m[i][k].is_zero:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return LaurentPoly.zero(nvars)
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * m[k][j]).divexact(prev)
            row_i[k] = LaurentPoly.zero(nvars)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# ----------------------------------------------------------------------
# misc helpers shared across modules
# ----------------------------------------------------------------------


def monomial_inverse(p: LaurentPoly) -> LaurentPoly:
    """Inverse of a single-term Laurent polynomial (a unit of the ring)."""
    if len(p.terms) != 1:
        raise ValueError("only monomials are invertible in the Laurent ring")
    (e, c), = p.terms.items()
    return LaurentPoly(p.vars, {tuple(-x for x in e): Fraction(1) / Fraction(c)})


def random_laurent(rng, nvars: int, *, exp_range=(-2, 2), max_terms: int = 4,
                   coeff_range=(-3, 3), allow_zero: bool = False) -> LaurentPoly:
    """Small random polynomial for property tests (uses a seeded Random)."""
    lo, hi = exp_range
    clo, chi = coeff_range
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(lo, hi) for _ in range(nvars))
        c = rng.randint(clo, chi)
        if c:
            terms[e] = terms.get(e, 0) + c
    p = LaurentPoly(nvars, terms)
    if p.is_zero and not allow_zero:
        return LaurentPoly.const(nvars, rng.randint(1, max(chi, 1)))
    return p
