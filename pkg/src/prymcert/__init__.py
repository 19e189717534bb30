"""Certify Gal(f) = W(D_m) for odd polynomials f = x h(x^2) and derive Prym variety facts."""

from .exactalg import (
    BaseField,
    IntPolynomial,
    discriminant,
    factor_integer,
    parse_poly,
    resultant,
)
from .galoiscert import Certificate, GaloisVerdict, Status, assemble_galois_verdict
from .pryminv import CurveProfile, TheoremReport, assemble_theorem_report, curve_profile

__version__ = "0.1.0"

__all__ = [
    "BaseField", "Certificate", "CurveProfile", "GaloisVerdict", "IntPolynomial", "Status", "TheoremReport",
    "assemble_galois_verdict", "assemble_theorem_report", "curve_profile", "discriminant", "factor_integer",
    "parse_poly", "resultant",
]
