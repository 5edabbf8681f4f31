"""Exact heights over Q and GF(p)(t), Siegel bases and symplectic bases of small height."""

from .errors import *  # noqa: F401,F403
from .fields import QQ, ExactPositive, ExpPositive, GroundField, Place, RationalFunction, SurdPositive
from .graphs import (
    PairSet,
    SimpleGraph,
    clique_number,
    disjoint_disconnected_pairs,
    oracle_max_disjoint_pairs,
    orthogonality_graph,
    sharpness_graph,
)
from .heights import (
    AdelicAutomorphism,
    DilationConstants,
    dilation_constants,
    dual_complement,
    form_height,
    height_matrix,
    height_subspace,
    height_vector,
    star,
)
from .linalg import Subspace, gram, intersect, kernel, plucker, saturate
from .siegel import SiegelCertificate, field_constant, small_basis
from .symplectic import (
    BoundReport,
    ExponentPair,
    SymplecticBasis,
    SymplecticSpace,
    exponents,
    hyperbolic_decomposition,
    is_regular,
    isotropic_flags,
    symplectic_basis,
    verify_bounds,
)

__version__ = "0.1.0"
