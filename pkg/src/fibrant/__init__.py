"""Exact computer algebra for Weierstrass elliptic fibrations over the plane."""

__version__ = "0.1.0"

from .poly import MultiPoly, Rational, format_poly, parse
from .weierstrass import (
    KodairaType,
    OrderTriple,
    WeierstrassFibration,
    kodaira_classify,
)
from .miranda import analyze_lagrange_family, collide

__all__ = [
    "MultiPoly",
    "Rational",
    "parse",
    "format_poly",
    "KodairaType",
    "OrderTriple",
    "WeierstrassFibration",
    "kodaira_classify",
    "analyze_lagrange_family",
    "collide",
    "__version__",
]
