"""Exact 2-descent tools for congruent numbers and curves y^2 = x^3 + Ax."""

from .curve import INFINITY, CurveA, CurvePoint, add_points, on_curve, torsion_classify
from .exactnum import DomainError, SquareClass, square_class

__version__ = "0.1.0"

__all__ = [
    "INFINITY",
    "CurveA",
    "CurvePoint",
    "DomainError",
    "SquareClass",
    "add_points",
    "on_curve",
    "square_class",
    "torsion_classify",
]
