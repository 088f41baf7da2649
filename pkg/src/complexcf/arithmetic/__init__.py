"""Exact field, quadratic-surd and ball arithmetic."""

from .ball import MAX_PREC, BallComplex, BallSource, ball_inv, ball_sqrt, circle_point
from .kfield import KElement, as_k, parse_k
from .predicates import ball_sign, hermitian_sign
from .surd import LNumber, QuadraticSurd, embed, k_sqrt, surd_equals, surd_from_poly, surd_step

__all__ = [
    "MAX_PREC",
    "BallComplex",
    "BallSource",
    "KElement",
    "LNumber",
    "QuadraticSurd",
    "as_k",
    "ball_inv",
    "ball_sign",
    "ball_sqrt",
    "circle_point",
    "embed",
    "hermitian_sign",
    "k_sqrt",
    "parse_k",
    "surd_equals",
    "surd_from_poly",
    "surd_step",
]
