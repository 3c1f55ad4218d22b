"""Injectivity of reciprocal sums over pairwise coprime ground sets, and the
numerator studies that go with it (collisions, lower bound, prime hunting).
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .exact_arith import FinSet, as_finset, nu, sigma
from .primes import factor, is_prime, primes_up_to

__all__ = [
    "is_pairwise_coprime",
    "ranked_subsets",
    "CoprimeReport",
    "verify_theorem_1_2",
    "NuCollision",
    "NuCollisionScan",
    "nu_collision_scan",
    "NuBound",
    "check_nu_lower_bound",
    "HunterResult",
    "prime_hunter",
    "PrimeProductReport",
    "check_prime_product_nu",
    "nu_histogram",
    "DEFAULT_SUBSET_CAP",
]

DEFAULT_SUBSET_CAP = 1 << 20


def is_pairwise_coprime(X: Iterable[int]) -> bool:
    X = as_finset(X)
    if not len(X):
        raise DomainError("is_pairwise_coprime needs a nonempty set")
    # pairwise coprime iff the product equals the lcm
    return math.prod(X) == math.lcm(*X)


def ranked_subsets(X: Iterable[int], sizes: Iterable[int] | None = None) -> Iterator[FinSet]:
    """Nonempty subsets of X ordered by size, then lexicographically."""
    X = as_finset(X)
    for r in sizes if sizes is not None else range(1, len(X) + 1):
        for combo in itertools.combinations(X, r):
            yield FinSet(combo)


@dataclass
class CoprimeReport:
    ground: FinSet
    subsets: int = 0
    delta_collisions: list = field(default_factory=list)
    sigma_collisions: list = field(default_factory=list)
    integral: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (not self.delta_collisions and not self.sigma_collisions
                and all(C == FinSet([1]) for C in self.integral))


def verify_theorem_1_2(X: Iterable[int], subset_cap: int = DEFAULT_SUBSET_CAP) -> CoprimeReport:
    """Enumerate every nonempty subset of a pairwise coprime X.

    Checks that denominators are pairwise distinct, sums are pairwise
    distinct, and that an integral sum occurs only for {1}.
    """
    X = as_finset(X)
    if not is_pairwise_coprime(X):
        raise DomainError(f"{X} is not pairwise coprime")
    total = (1 << len(X)) - 1
    if total > subset_cap:
        raise ResourceLimitError(f"{total} subsets exceed subset_cap={subset_cap}",
                                 cap="subset_cap", achieved=0)
    rep = CoprimeReport(X)
    by_delta: dict[int, FinSet] = {}
    by_sigma: dict[Fraction, FinSet] = {}
    for C in ranked_subsets(X):
        s = sigma(C)
        rep.subsets += 1
        prev = by_delta.setdefault(s.denominator, C)
        if prev is not C:
            rep.delta_collisions.append((prev, C))
        prev = by_sigma.setdefault(s, C)
        if prev is not C:
            rep.sigma_collisions.append((prev, C))
        if s.denominator == 1:
            rep.integral.append(C)
    return rep


@dataclass(frozen=True)
class NuCollision:
    size: int
    set_a: FinSet
    set_b: FinSet
    nu: int

    def record(self) -> dict:
        return {"size": self.size, "set_a": str(self.set_a), "set_b": str(self.set_b),
                "nu": str(self.nu)}


@dataclass
class NuCollisionScan:
    pool: FinSet
    size: int
    pool_coprime: bool
    subsets: int
    collisions: list[NuCollision]


def nu_collision_scan(pool: Iterable[int], subset_size: int,
                      cap: int = DEFAULT_SUBSET_CAP) -> NuCollisionScan:
    """All unordered pairs of distinct ``subset_size``-subsets of ``pool`` sharing a numerator."""
    pool = as_finset(pool)
    total = math.comb(len(pool), subset_size)
    if total > cap:
        raise ResourceLimitError(f"{total} subsets exceed cap={cap}", cap="subset_cap",
                                 achieved=0)
    groups: dict[int, list[FinSet]] = defaultdict(list)
    for C in ranked_subsets(pool, [subset_size]):
        groups[nu(C)].append(C)
    collisions = [NuCollision(subset_size, a, b, value)
                  for value, sets in groups.items()
                  for a, b in itertools.combinations(sets, 2)]
    collisions.sort(key=lambda c: (c.set_a.elements, c.set_b.elements))
    return NuCollisionScan(pool, subset_size, is_pairwise_coprime(pool), total, collisions)


@dataclass
class NuBound:
    C: FinSet
    nu: int
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.nu >= self.bound


def check_nu_lower_bound(C: Iterable[int]) -> NuBound:
    """Compare nu(C) with |C| * prod(C) / max(C)**|C| exactly."""
    C = as_finset(C)
    bound = Fraction(len(C) * math.prod(C), C.max() ** len(C))
    return NuBound(C, nu(C), bound)


@dataclass
class HunterResult:
    powers: list[int]
    nu: int
    coprime_to_all: bool
    factorization: object

    @property
    def new_primes(self) -> list[int]:
        return list(self.factorization)


def prime_hunter(primes: list[int], exponents: list[int]) -> HunterResult:
    """Numerator of the sum of 1/q_i**e_i; it shares no factor with any q_i."""
    if len(primes) != len(exponents) or not primes:
        raise DomainError("need matching, nonempty prime and exponent lists")
    if len(set(primes)) != len(primes):
        raise DomainError(f"primes must be distinct, got {primes}")
    for q, e in zip(primes, exponents):
        if not is_prime(q):
            raise DomainError(f"{q} is not prime")
        if e < 1:
            raise DomainError(f"exponents must be >= 1, got {e}")
    powers = [q**e for q, e in zip(primes, exponents)]
    value = nu(powers)
    return HunterResult(powers, value, all(math.gcd(value, q) == 1 for q in primes),
                        factor(value))


@dataclass
class PrimeProductReport:
    rows: list[dict]
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_prime_product_nu(k_max: int = 10) -> PrimeProductReport:
    """For the first k primes (2 <= k <= k_max): nu > k * p_1 ... p_{k-1},
    and every prime dividing nu exceeds p_k."""
    ps = [int(p) for p in primes_up_to(64 * max(k_max, 2))][:k_max]
    rows, bad = [], []
    for k in range(2, k_max + 1):
        first = ps[:k]
        value = nu(first)
        bound = k * math.prod(first[:-1])
        fm = factor(value)
        row = {"k": k, "nu": value, "bound": bound, "factors": dict(fm)}
        rows.append(row)
        if not value > bound:
            bad.append({**row, "problem": "nu <= k * p_1...p_{k-1}"})
        if not fm.complete or any(p <= first[-1] for p in fm):
            bad.append({**row, "problem": "prime divisor <= p_k"})
    return PrimeProductReport(rows, bad)


def nu_histogram(X: Iterable[int], bins: int = 10,
                 subset_cap: int = DEFAULT_SUBSET_CAP) -> list[tuple[int, int, int]]:
    """Counts of nu over all nonempty subsets of X, in ``bins`` equal-width
    ranges ``(lo, hi, count)``; an observation aid, not a characterization."""
    X = as_finset(X)
    if (1 << len(X)) - 1 > subset_cap:
        raise ResourceLimitError("too many subsets", cap="subset_cap", achieved=0)
    values = sorted(nu(C) for C in ranked_subsets(X))
    lo, hi = values[0], values[-1]
    width = max(1, -(-(hi - lo + 1) // bins))
    out = []
    for i in range(bins):
        a, b = lo + i * width, lo + (i + 1) * width - 1
        if a > hi:
            break
        out.append((a, b, sum(1 for v in values if a <= v <= b)))
    return out
