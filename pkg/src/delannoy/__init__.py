"""Generalized Delannoy polynomials, their orthogonal companions, and exact checks."""

from .exact import GaussRational, Rational, int_binomial
from .families import (
    CACHE,
    D_egf,
    D_from_d,
    D_rec,
    FamilyCache,
    d_def,
    d_gf,
    d_rec,
    delannoy_number,
)
from .multipoly import MultiPoly, binom_poly, poly_eval, pretty
from .series import TruncSeries

__version__ = "0.1.0"
