"""Exact supercharacter theories of unitriangular and triangular groups over prime fields,
with the Hopf algebras of superclass functions."""

from .exact import Cyclotomic, FieldElement, additive_character, multiplicative_character
from .combinatorics import AdmissiblePair, RiggedPartition, SetPartition
from .theory import ClassFunction, Report, SuperTheoryCandidate, scalar_product, schur_check, verify_theory
from .unitriangular import AlgebraGroupTheory, ut_theory
from .triangular import CharTriple, TriangularTheory, tri_theory

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic",
    "FieldElement",
    "additive_character",
    "multiplicative_character",
    "AdmissiblePair",
    "RiggedPartition",
    "SetPartition",
    "ClassFunction",
    "Report",
    "SuperTheoryCandidate",
    "scalar_product",
    "schur_check",
    "verify_theory",
    "AlgebraGroupTheory",
    "ut_theory",
    "CharTriple",
    "TriangularTheory",
    "tri_theory",
]
