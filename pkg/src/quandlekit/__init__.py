"""Exact computations in quandle rings over Z, Z/m and Q."""

from . import kernels
from .coeffs import QQ, Z, CoefficientRing
from .errors import QuandleKitError
from .quandle import FiniteQuandle, verify_quandle, make_trivial, make_dihedral, make_cs4, predicates
from .ring import RingElement, format_element, parse_element
from .catalog import get

__version__ = "0.1.0"

__all__ = [
    "kernels", "QQ", "Z", "CoefficientRing", "QuandleKitError", "FiniteQuandle", "verify_quandle",
    "make_trivial", "make_dihedral", "make_cs4", "predicates", "RingElement", "format_element",
    "parse_element", "get",
]
