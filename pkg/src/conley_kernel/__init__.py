"""Exact kernel for index-pair-free Conley index computations.

Two carriers are supported: finite discrete systems and exact rational
box systems in R^n (piecewise-affine maps, exactly-representable semiflows).
All kernel arithmetic is exact rational; there are no tolerances.
"""

__version__ = "0.1.0"

from .boxes import BoxSet, Cut, Interval, NEG_INF, POS_INF, rat
from .affine import AffineRule, Piece, PiecewiseAffineMap
from .finite import FinitePartialMap, FiniteSpace, FiniteSubset

__all__ = [
    "__version__",
    "BoxSet", "Cut", "Interval", "NEG_INF", "POS_INF", "rat",
    "AffineRule", "Piece", "PiecewiseAffineMap",
    "FinitePartialMap", "FiniteSpace", "FiniteSubset",
]
