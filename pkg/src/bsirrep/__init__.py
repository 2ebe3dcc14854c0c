"""
Finite-dimensional irreducible representations of Baumslag-Solitar groups
BS(p, q) = <a, b | a b^p a^-1 = b^q>, p and q coprime, in exact cyclotomic
arithmetic.
"""
from __future__ import annotations

from .classify import (
    ClassificationReport,
    ClassRecord,
    are_equivalent,
    classify_dimension,
    count_irreducibles,
    exists_rep,
    find_intertwiner,
    is_irreducible,
)
from .cyclotomic import CycNum, cyclotomic_polynomial, rational, zeta
from .exactlinalg import CycMatrix, CycVector
from .oracle import GroupWord, burnside_irreducible, evaluate_word, invariant_subspace_witness
from .repcore import BSParams, MatrixPair, RepSpec, build_matrices, verify_relation

__all__ = [
    "BSParams",
    "ClassRecord",
    "ClassificationReport",
    "CycMatrix",
    "CycNum",
    "CycVector",
    "GroupWord",
    "MatrixPair",
    "RepSpec",
    "are_equivalent",
    "build_matrices",
    "burnside_irreducible",
    "classify_dimension",
    "count_irreducibles",
    "cyclotomic_polynomial",
    "evaluate_word",
    "exists_rep",
    "find_intertwiner",
    "invariant_subspace_witness",
    "is_irreducible",
    "rational",
    "verify_relation",
    "zeta",
]
