from .fpoly import FiniteField, RationalFunction
from .refuter import (
    CollisionCertificate,
    SubfieldSpec,
    UncoveredWitness,
    pigeonhole_refutation,
    refute_coset_cover,
    rf_subfield_member,
    verify_certificate,
)
from .units import (
    EXPONENT_LATTICES,
    UnitExponentVector,
    exponent_cover,
    rf_semigroup_membership,
    rf_unit_exponents,
    semigroup_membership,
    unit_exponents,
)
from .zx import IntPolynomial, zx_closure_check, zx_membership

__all__ = [
    "CollisionCertificate",
    "EXPONENT_LATTICES",
    "FiniteField",
    "IntPolynomial",
    "RationalFunction",
    "SubfieldSpec",
    "UncoveredWitness",
    "UnitExponentVector",
    "exponent_cover",
    "pigeonhole_refutation",
    "refute_coset_cover",
    "rf_semigroup_membership",
    "rf_subfield_member",
    "rf_unit_exponents",
    "semigroup_membership",
    "unit_exponents",
    "verify_certificate",
    "zx_closure_check",
    "zx_membership",
]
