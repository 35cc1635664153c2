"""Burnside rings, Mackey algebras over Z and F_p, and homological checks on them."""
from .algebra import GF, ZZ, CoefficientRing, StructuredAlgebra
from .burncat import MackeyAlgebra, Span, compose, hom_basis, mackey_algebra
from .burnring import burnside_algebra, gustafson_form
from .grpcore import Group, build_group, parse_group_spec

__version__ = "0.1.0"

__all__ = [
    "GF", "ZZ", "CoefficientRing", "Group", "MackeyAlgebra", "Span", "StructuredAlgebra",
    "build_group", "burnside_algebra", "compose", "gustafson_form", "hom_basis",
    "mackey_algebra", "parse_group_spec", "__version__",
]
