"""Weighted norms, numerical ranges and their geometry on matrix *-algebras.

A positive invertible weight ``a`` on the n x n complex matrices induces a
family of norms interpolating the weighted operator norm and the weighted
numerical radius.  This package computes those norms with maximizing
witness states, decides norm parallelism and Birkhoff-James orthogonality
with state-level certificates, and ships brute-force oracles that certify
the solvers at small dimension.
"""

from . import errors
from .geometry import (
    Certificate,
    NormaloidReport,
    OrthoResult,
    ParallelResult,
    ThetaWitness,
    is_orthogonal,
    is_parallel,
    is_vrad_parallel,
    make_certificate,
    normaloid_equivalences,
    parallelism_implies_orthogonality_check,
    vrad_positive_orthogonality,
)
from .linalg import HermEig, herm_eig, herm_inverse, psd_sqrt
from .oracle import OracleConfig, grid_max_mu, grid_min_xi, sphere_sample_max
from .seminorms import (
    NormResult,
    RangeBoundary,
    SolverConfig,
    a_norm,
    a_numradius,
    a_numrange_boundary,
    al_norm,
    al_norm_of_sum,
)
from .weights import (
    StateWitness,
    Weight,
    a_adjoint,
    is_a_positive,
    is_a_selfadjoint,
    reduce,
    state_from_unit_vector,
    validate_weight,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "HermEig",
    "NormResult",
    "NormaloidReport",
    "OracleConfig",
    "OrthoResult",
    "ParallelResult",
    "RangeBoundary",
    "SolverConfig",
    "StateWitness",
    "ThetaWitness",
    "Weight",
    "a_adjoint",
    "a_norm",
    "a_numradius",
    "a_numrange_boundary",
    "al_norm",
    "al_norm_of_sum",
    "errors",
    "grid_max_mu",
    "grid_min_xi",
    "herm_eig",
    "herm_inverse",
    "is_a_positive",
    "is_a_selfadjoint",
    "is_orthogonal",
    "is_parallel",
    "is_vrad_parallel",
    "make_certificate",
    "normaloid_equivalences",
    "parallelism_implies_orthogonality_check",
    "psd_sqrt",
    "reduce",
    "sphere_sample_max",
    "state_from_unit_vector",
    "validate_weight",
    "vrad_positive_orthogonality",
]
