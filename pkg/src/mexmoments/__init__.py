"""mexmoments: exact and asymptotic moments of generalized
minimal-excludant partition statistics.

Three independent computation routes are provided and cross-verified:
brute-force enumeration over partitions, exact generating-function
coefficient extraction, and closed-form growth laws; on top of those sit
scanners for the log-concavity and residue-bias questions.
"""

__version__ = "0.1.0"

from mexmoments.backend import BACKEND
from mexmoments.errors import ResourceCapError, ValidationError
from mexmoments.partitions import (
    MexParams,
    Partition,
    enumerate_partitions,
    mex_s,
    mex_s_mod,
    sigma_oracle,
    varsigma_oracle,
)
from mexmoments.qseries import (
    MomentSequence,
    TruncatedSeries,
    euler_product,
    moment_sequence,
    partition_numbers,
    series_invert,
    series_mul,
    sigma_gf_coeffs,
    varsigma_gf_coeffs,
)

__all__ = [
    "BACKEND",
    "MexParams",
    "MomentSequence",
    "Partition",
    "ResourceCapError",
    "TruncatedSeries",
    "ValidationError",
    "__version__",
    "enumerate_partitions",
    "euler_product",
    "mex_s",
    "mex_s_mod",
    "moment_sequence",
    "partition_numbers",
    "series_invert",
    "series_mul",
    "sigma_gf_coeffs",
    "sigma_oracle",
    "varsigma_gf_coeffs",
    "varsigma_oracle",
]
