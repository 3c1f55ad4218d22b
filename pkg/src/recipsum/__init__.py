"""Exact reciprocal sums of finite sets of positive integers.

The core objects are :class:`FinSet` with its reciprocal sum ``sigma`` and
the lowest-terms pieces ``nu``/``delta``; words over the maps n -> n+1 and
n -> n(n+1) that generate disjoint families with a fixed sum; the
replacement sequence; sylvester powers of a set; and the prime structure
of the orbit of n -> n(n+1).
"""

__version__ = "0.1.0"

from .coprime import (
    check_nu_lower_bound,
    check_prime_product_nu,
    is_pairwise_coprime,
    nu_collision_scan,
    prime_hunter,
    verify_theorem_1_2,
)
from .errors import DomainError, ResourceLimitError
from .exact_arith import FinSet, delta, format_rational, mu, nu, parse_rational, sigma, weighted_sigma
from .family import RationalTarget, assemble_theorem1, disjoint_family, greedy_disjoint_levels
from .primes import FactorMap, factor, is_prime, primes_up_to, valuation
from .records import ScanRecord, decode_token, encode_token
from .scans import run_scan
from .sigma_sequence import disjoint_subsequence, replaceable, run, step
from .stars import check_star_growth_and_primecount, exponent_profile, star_orbit
from .sylvester import (
    check_theisinger_kurschak,
    erdos_niven_scan,
    interval_sylvester_powers,
    quadruple_scan,
    sylvester_powers,
    verify_delta_divisibility,
)
from .words import Word, apply, check_length_uniqueness, level_multiset, preimages

__all__ = [
    "__version__",
    "DomainError", "ResourceLimitError",
    "FinSet", "sigma", "nu", "delta", "mu", "weighted_sigma", "format_rational",
    "parse_rational",
    "Word", "apply", "level_multiset", "preimages", "check_length_uniqueness",
    "RationalTarget", "assemble_theorem1", "disjoint_family", "greedy_disjoint_levels",
    "replaceable", "step", "run", "disjoint_subsequence",
    "sylvester_powers", "interval_sylvester_powers", "verify_delta_divisibility",
    "check_theisinger_kurschak", "erdos_niven_scan", "quadruple_scan",
    "is_pairwise_coprime", "verify_theorem_1_2", "nu_collision_scan",
    "check_nu_lower_bound", "check_prime_product_nu", "prime_hunter",
    "star_orbit", "exponent_profile", "check_star_growth_and_primecount",
    "factor", "FactorMap", "is_prime", "primes_up_to", "valuation",
    "ScanRecord", "encode_token", "decode_token", "run_scan",
]
