"""Polytope complexes, the span category SC(C) and its K0."""

from ._core import (
    BoundExceeded,
    CapExceeded,
    Error,
    IoError,
    ParseError,
    PreconditionError,
    Complex,
    Functor,
    K0,
    Morphism,
    check_waldhausen,
    classify,
    cofiber,
    compose,
    hom,
    identity,
    inclusion_functor,
    interval,
    make_morphism,
    pushout,
    quadratic,
    rationals,
    s_g,
    smith_normal_form,
    sphere,
    wedge,
)

__version__ = "0.1.0"

__all__ = [
    "BoundExceeded",
    "CapExceeded",
    "Error",
    "IoError",
    "ParseError",
    "PreconditionError",
    "Complex",
    "Functor",
    "K0",
    "Morphism",
    "check_waldhausen",
    "classify",
    "cofiber",
    "compose",
    "hom",
    "identity",
    "inclusion_functor",
    "interval",
    "make_morphism",
    "pushout",
    "quadratic",
    "rationals",
    "s_g",
    "smith_normal_form",
    "sphere",
    "wedge",
]
