"""Exact polynomial algebra over Q: orders, Groebner bases and ideal operations."""

from .coeffs import QQ, parse_rational, to_fraction
from .groebner import GroebnerBasis, buchberger, normal_form, s_polynomial
from .ideals import (
    Ideal,
    colon,
    eliminate,
    ideal_member,
    intersect,
    is_unit_ideal,
    krull_dimension,
    saturate,
)
from .orders import MonomialOrder, elimination, grevlex, lex, parse_order
from .polynomial import Polynomial, divmod_poly, parse_polynomial
from .univariate import rational_roots, squarefree_part, univariate_data

__all__ = [
    "QQ",
    "parse_rational",
    "to_fraction",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "s_polynomial",
    "Ideal",
    "colon",
    "eliminate",
    "ideal_member",
    "intersect",
    "is_unit_ideal",
    "krull_dimension",
    "saturate",
    "MonomialOrder",
    "elimination",
    "grevlex",
    "lex",
    "parse_order",
    "Polynomial",
    "divmod_poly",
    "parse_polynomial",
    "rational_roots",
    "squarefree_part",
    "univariate_data",
]
