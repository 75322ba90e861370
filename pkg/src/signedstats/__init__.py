"""Descent numbers and major indices on signed permutations, with exact identity checks."""

from .signed_perm import (
    SignedPermutation, compose, element_t, enumerate_group, factor_parabolic,
    flag_decompose, from_window, generator, inverse, parse_window,
)
from .statistics import StatRecord, full_stats, ndes_multiset
from .polyring import BiPoly, TruncSeries, carlitz_lhs, delta_t, q_integer
from .identities import (
    IDENTITY_IDS, DistributionSpec, Verdict, a_poly_recursive, distribution,
    s_poly_product, s_poly_recursive, verify,
)

__version__ = "0.1.0"

__all__ = [
    "SignedPermutation", "compose", "element_t", "enumerate_group", "factor_parabolic",
    "flag_decompose", "from_window", "generator", "inverse", "parse_window",
    "StatRecord", "full_stats", "ndes_multiset",
    "BiPoly", "TruncSeries", "carlitz_lhs", "delta_t", "q_integer",
    "IDENTITY_IDS", "DistributionSpec", "Verdict", "a_poly_recursive", "distribution",
    "s_poly_product", "s_poly_recursive", "verify",
]
