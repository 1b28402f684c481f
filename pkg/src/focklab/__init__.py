"""Numerical laboratory for Toeplitz operators on truncated Fock spaces."""

from .fock import (
    LITTLE_INFINITY,
    FockParams,
    MultiIndexBasis,
    OperatorMatrix,
    TruncatedVector,
    basis_norm,
    fp_norm,
    kernel_eval,
    kernel_expand,
    weyl_matrix,
)
from .engine import (
    NormEstimate,
    QuadratureScheme,
    berezin,
    berezin_symbol,
    dilation_conjugate,
    integral_apply,
    k_s_matrix,
    module_conv,
    norm_estimate,
    rank_one,
    shift,
    toeplitz_matrix,
)

__version__ = "0.1.0"
