"""Exact integral bases, integral function bases and optimality certificates."""
from .cone import RationalCone, SimplicialPiece, extreme_rays, is_pointed, member, triangulate
from .errors import (CapExceededError, EmptySetError, IFBError, InfeasiblePointError,
                     InfiniteBasisError, NotPointedError, PreconditionError,
                     RankDeficientError, SingularMatrixError)
from .funcbasis import (FunctionBasis, ParamFamily, covers, ifb_from_cone, split_basis,
                        split_family)
from .intbasis import (IntegralBasis, fiber_decompose, hilbert_basis, integral_basis,
                       minimal_elements, minimize_basis, parallelepiped_points)
from .linalg import IntMatrix, lattice_index, rank, solve_rational
from .optimality import PolyIP, certify, orthant_rays
from .polyhedron import (ConeMinusExcluded, ExplicitFinite, Polyhedron, PolyhedronPoints,
                         SemiAlgebraicPoints, excluded_points, has_finite_basis,
                         recession_cone)
from .polynomial import MultiPoly, PolyMap, correction_bounds, correction_residual, taylor_shift

__version__ = "0.1.0"

__all__ = [
    "__version__", "RationalCone", "SimplicialPiece", "extreme_rays", "is_pointed", "member",
    "triangulate", "CapExceededError", "EmptySetError", "IFBError", "InfeasiblePointError",
    "InfiniteBasisError", "NotPointedError", "PreconditionError", "RankDeficientError",
    "SingularMatrixError", "FunctionBasis", "ParamFamily", "covers", "ifb_from_cone",
    "split_basis", "split_family", "IntegralBasis", "fiber_decompose", "hilbert_basis", "integral_basis", "minimal_elements",
    "minimize_basis", "parallelepiped_points", "IntMatrix", "lattice_index", "rank",
    "solve_rational", "PolyIP", "certify", "orthant_rays", "ConeMinusExcluded",
    "ExplicitFinite", "Polyhedron", "PolyhedronPoints", "SemiAlgebraicPoints",
    "excluded_points", "has_finite_basis", "recession_cone", "MultiPoly", "PolyMap",
    "correction_bounds", "correction_residual", "taylor_shift",
]
