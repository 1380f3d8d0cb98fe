"""Monte Carlo and exact weight enumeration for Reed-Muller codes."""

from ._rmenum import (
    NotACodewordError,
    ResourceCapExceeded,
    RmCode,
    brute_force_distribution,
    candidate_weights,
    coset_recursion_distribution,
    estimate_adaptive,
    estimate_fixed,
    estimate_spectrum,
    macwilliams_transform,
    rm_dimension,
    sample,
    sample_size_bound,
)

__all__ = [
    "NotACodewordError",
    "ResourceCapExceeded",
    "RmCode",
    "brute_force_distribution",
    "candidate_weights",
    "coset_recursion_distribution",
    "estimate_adaptive",
    "estimate_fixed",
    "estimate_spectrum",
    "macwilliams_transform",
    "rm_dimension",
    "sample",
    "sample_size_bound",
]
__version__ = "0.1.0"
