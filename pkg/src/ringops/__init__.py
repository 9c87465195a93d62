"""Symbolic toolkit for discrete ring operads over square-free polynomial index sets."""

from .polynomials import (
    IntPoly,
    Monomial,
    RPoly,
    TypeSignature,
    UNIT,
    compose,
    enumerate_R,
    extended_compose,
    is_member,
    is_nondegenerate,
    lambda_of,
    rpoly,
    special_of_type,
    type_of,
    zero_poly,
)
from .indexcat import ExtMap, RMorphism, canonical_decompose, enumerate_hom, validate

__all__ = [
    "IntPoly",
    "Monomial",
    "RPoly",
    "TypeSignature",
    "UNIT",
    "compose",
    "enumerate_R",
    "extended_compose",
    "is_member",
    "is_nondegenerate",
    "lambda_of",
    "rpoly",
    "special_of_type",
    "type_of",
    "zero_poly",
    "ExtMap",
    "RMorphism",
    "canonical_decompose",
    "enumerate_hom",
    "validate",
]
