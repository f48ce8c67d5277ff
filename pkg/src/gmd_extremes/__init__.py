"""Extremes of the generalized Maxwell distribution.

Exact finite-n laws of the normalized sample maximum and minimum, their
Gumbel-type asymptotic expansions, and tools to check one against the other.
"""

from .errors import DomainError, NumericError, UsageError
from .exact import (
    JointPoint,
    exact_joint_cdf,
    exact_joint_pdf,
    exact_max_cdf,
    exact_min_cdf,
    h_k_functional,
)
from .expansions import (
    ApproxOrder,
    ExpansionCoeffs,
    approx_joint_cdf,
    approx_joint_pdf,
    approx_max_cdf,
    approx_min_cdf,
    gumbel,
    joint_coeffs,
    l_k,
    w_k,
)
from .gmd import GmdParams, cdf, log_mills_tail, mills_tail, pdf, quantile, sample, sf
from .lab import (
    ErrorRecord,
    McSummary,
    ProbeResult,
    error_table,
    limit_probe,
    mc_block_extremes,
    rate_fit,
    richardson_extrapolate,
)
from .norming import Norming, solve_norming, u_level, v_level

__version__ = "0.1.0"
