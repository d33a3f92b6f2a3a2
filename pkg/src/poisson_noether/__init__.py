"""Exact invariant Darboux coordinates for Poisson fields under finite groups."""

from .coeff import CycRat, primitive_root, zeta
from .errors import (
    DivisionByZeroError,
    ExprSyntaxError,
    GroupOrderError,
    GroupSpecError,
    InvariantSystemError,
    NotInInvariantRingError,
    PoissonNoetherError,
    PresentationError,
    RankMismatchError,
    ResourceError,
    VerificationError,
    ZeroDenominatorError,
)
from .expr import parse_expr, parse_ratfn
from .group import (
    GroupAction,
    LinMat,
    act,
    binary_dihedral,
    complex_reflection_group,
    cyclic_sl2,
    group_from_spec,
    is_invariant,
    symmetric_group,
    trivial_group,
    wreath_product,
)
from .invariants import (
    express_in_invariants,
    fundamental_invariants,
    independence_certificate,
    jacobian,
)
from .multipoly import Poly, VarIndex, VarKind, X, Y, substitute
from .noether import (
    construct,
    darboux_primes,
    presentation_search,
    product_decompose,
    sl2_block,
    wreath_compose,
)
from .poisson import bracket
from .ratfunc import RatFn, ratfn_equal, reduction

__version__ = "0.1.0"

__all__ = [
    "CycRat",
    "DivisionByZeroError",
    "ExprSyntaxError",
    "GroupAction",
    "GroupOrderError",
    "GroupSpecError",
    "InvariantSystemError",
    "LinMat",
    "NotInInvariantRingError",
    "PoissonNoetherError",
    "Poly",
    "PresentationError",
    "RankMismatchError",
    "RatFn",
    "ResourceError",
    "VarIndex",
    "VarKind",
    "VerificationError",
    "X",
    "Y",
    "ZeroDenominatorError",
    "act",
    "binary_dihedral",
    "bracket",
    "complex_reflection_group",
    "construct",
    "cyclic_sl2",
    "darboux_primes",
    "express_in_invariants",
    "fundamental_invariants",
    "group_from_spec",
    "independence_certificate",
    "is_invariant",
    "jacobian",
    "parse_expr",
    "parse_ratfn",
    "presentation_search",
    "primitive_root",
    "product_decompose",
    "ratfn_equal",
    "reduction",
    "sl2_block",
    "substitute",
    "symmetric_group",
    "trivial_group",
    "wreath_product",
    "zeta",
]
