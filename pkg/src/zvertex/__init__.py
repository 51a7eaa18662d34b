"""Exact integral forms for lattice and affine vertex algebras.

The package certifies, slice by graded slice and in exact rational
arithmetic, that the integer spans generated by lattice vertex operators
(and by divided powers on the affine side) are genuine integral forms:
closed under the products, of full rank, and with the documented monomial
bases. See the CLI (``zvertex --help``) for the report surface.
"""

from .lattice import Lattice, parse_lattice
from .cocycle import Cocycle, build_cocycle
from .fock import FockElement
from .zspan import GradedSpan, ZSpanSlice, span_of
from .liedata import LieData, sl2, sl3
from .affine import AffineContext, PBWElement, vacuum_context
from .virasoro import ConformalData, conformal_vector

__all__ = [
    "Lattice", "parse_lattice", "Cocycle", "build_cocycle", "FockElement",
    "GradedSpan", "ZSpanSlice", "span_of", "LieData", "sl2", "sl3",
    "AffineContext", "PBWElement", "vacuum_context", "ConformalData",
    "conformal_vector",
]
