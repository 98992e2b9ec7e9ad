"""Exact arithmetic substrate: scalars, sparse polynomials, rational
functions, and fraction-free linear algebra."""

from .linalg import det, nullspace, rank, solve
from .polys import MultiPoly, PolyRing
from .ratfunc import RatFunc, ratfunc_parse
from .scalars import QI, QQ, Gaussian, format_gaussian, parse_gaussian

__all__ = [
    "QQ",
    "QI",
    "Gaussian",
    "format_gaussian",
    "parse_gaussian",
    "PolyRing",
    "MultiPoly",
    "RatFunc",
    "ratfunc_parse",
    "rank",
    "det",
    "nullspace",
    "solve",
]
