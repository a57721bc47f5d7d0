"""polyrec: exact recurrent sequences of Laurent polynomials, their Newton
polytopes, and empirical quasi-polynomial structure detection."""

from polyrec.algebra import LaurentPoly, RatFn

__all__ = ["LaurentPoly", "RatFn"]
__version__ = "0.1.0"
