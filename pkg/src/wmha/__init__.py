"""Exact verification of weak multiplier Hopf algebras built from groupoids and tables."""

from .families import build_CG, build_KG, canonical_pairing, table_structure
from .groupoid import Groupoid, build_groupoid, validate_groupoid
from .report import Check, VerificationReport
from .scalars import Scalar
from .wmha import Structure, find_E, solve_F, verify_wmha, weak_hopf_adapter

__all__ = [
    "Check", "Groupoid", "Scalar", "Structure", "VerificationReport",
    "build_CG", "build_KG", "build_groupoid", "canonical_pairing", "find_E", "solve_F",
    "table_structure", "validate_groupoid", "verify_wmha", "weak_hopf_adapter",
]

__version__ = "0.1.0"
