"""Exact linear algebra over elementary divisor rings.

Smith normal forms (Bezout elimination and the Kaplansky reduction),
finitely presented modules, and homology of chain complexes over the
integers and univariate polynomial rings over Q and F_p.
"""

from .errors import CapabilityError, InvariantError, ParseError
from .fpmod import (
    ChainComplex,
    ModuleDecomposition,
    Morphism,
    Presentation,
    cokermx,
    decompose,
    homology,
    ideal_member,
    is_isomorphic,
    kermx,
    morphism_make,
    mxrank,
    solve_xm_eq_b,
)
from .kaplansky import kap, kap_smith2x2, kapW, krull1_factor, smithmxn
from .matrix import IndexMap, Matrix, determinant, diag_mx_seq, identity, minor, strict_maps
from .rings import QQx, ZZ, PrimeFieldPolynomials, ring_from_tag
from .smith import SmithResult, determinantal_divisor, smith, verify_smith

__version__ = "0.1.0"

__all__ = [
    "CapabilityError", "InvariantError", "ParseError",
    "ChainComplex", "ModuleDecomposition", "Morphism", "Presentation",
    "cokermx", "decompose", "homology", "ideal_member", "is_isomorphic", "kermx",
    "morphism_make", "mxrank", "solve_xm_eq_b",
    "kap", "kapW", "kap_smith2x2", "krull1_factor", "smithmxn",
    "IndexMap", "Matrix", "determinant", "diag_mx_seq", "identity", "minor", "strict_maps",
    "QQx", "ZZ", "PrimeFieldPolynomials", "ring_from_tag",
    "SmithResult", "determinantal_divisor", "smith", "verify_smith",
]
