"""Iterating n -> n(n+1): prime sets, exponent profiles, growth.

Since star^{j+1}(b) = star^j(b) * (star^j(b) + 1) and the two factors are
coprime, a prime's exponent is fixed from the first iterate it divides.
Only star^j(b) + 1 needs fresh factoring at each depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, ResourceLimitError
from .exact_arith import to_decimal
from .primes import DEFAULT_BUDGET, FactorMap, factor, primes_up_to, valuation
from .words import DEFAULT_DIGIT_CAP, star

__all__ = [
    "star",
    "star_iterate",
    "star_orbit",
    "factor",
    "ProfileEntry",
    "StarProfile",
    "exponent_profile",
    "GrowthReport",
    "check_star_growth_and_primecount",
    "PbObservation",
    "pb_membership",
]


def _digits(n: int) -> int:
    return len(str(n)) if n < 10**4000 else int(n.bit_length() * math.log10(2)) + 1


def star_orbit(b: int, depth: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> list[int]:
    """``[b, star(b), ..., star^depth(b)]``."""
    if b < 1:
        raise DomainError(f"base must be >= 1, got {b}")
    out = [b]
    for j in range(depth):
        nxt = star(out[-1])
        if _digits(nxt) > digit_cap:
            raise ResourceLimitError(
                f"star^{j + 1}({b}) exceeds digit_cap={digit_cap}; "
                f"last representable index is {j}", cap="digit_cap", achieved=j)
        out.append(nxt)
    return out


def star_iterate(b: int, k: int, digit_cap: int = DEFAULT_DIGIT_CAP) -> int:
    return star_orbit(b, k, digit_cap)[-1]


@dataclass
class ProfileEntry:
    prime: int
    first_index: int
    exponent: int

    def record(self, b: int, verified_through: int) -> dict:
        return {"b": to_decimal(b), "prime": to_decimal(self.prime), "first_index": self.first_index,
                "exponent": self.exponent, "verified_through_depth": verified_through}


@dataclass
class StarProfile:
    """Per-prime first index and stable exponent along star^j(b), j <= depth.

    ``verified_through`` is the deepest index actually factored; it falls
    short of ``depth`` when the factoring budget ran out.
    """

    b: int
    depth: int
    entries: dict[int, ProfileEntry] = field(default_factory=dict)
    verified_through: int = -1
    violations: list[dict] = field(default_factory=list)
    unfactored: int | None = None

    @property
    def complete(self) -> bool:
        return self.verified_through == self.depth and self.unfactored is None

    @property
    def ok(self) -> bool:
        return not self.violations

    def s_vector(self, n_primes: int) -> list[int]:
        """Exponents at the first ``n_primes`` primes (0 where not yet seen)."""
        ps = [int(p) for p in primes_up_to(max(16, n_primes * 16))][:n_primes]
        return [self.entries[p].exponent if p in self.entries else 0 for p in ps]

    def records(self) -> list[dict]:
        return [e.record(self.b, self.verified_through)
                for _, e in sorted(self.entries.items())]


def exponent_profile(b: int, depth: int, budget: int = DEFAULT_BUDGET,
                     digit_cap: int = DEFAULT_DIGIT_CAP) -> StarProfile:
    """Factor star^j(b) for j = 0..depth incrementally and record each prime's
    first index and exponent.

    Every recorded exponent is re-checked against the full value at every
    later depth, and consecutive iterates are checked coprime.
    """
    if b < 2:
        raise DomainError(f"base must be >= 2, got {b}")
    prof = StarProfile(b, depth)
    orbit = star_orbit(b, depth, digit_cap)
    fm = factor(b, budget)
    if not fm.complete:
        prof.unfactored = fm.remainder
        return prof
    for p, e in fm.items():
        prof.entries[p] = ProfileEntry(p, 0, e)
    prof.verified_through = 0
    for j in range(depth):
        x = orbit[j]
        if math.gcd(x, x + 1) != 1:  # pragma: no cover - consecutive integers
            prof.violations.append({"j": j, "problem": "consecutive iterates share a factor"})
        nxt = factor(x + 1, budget)
        if not nxt.complete:
            prof.unfactored = nxt.remainder
            break
        for p, e in nxt.items():
            if p in prof.entries:
                prof.violations.append({"j": j + 1, "prime": p,
                                        "problem": "prime reappeared in star^j(b) + 1"})
            else:
                prof.entries[p] = ProfileEntry(p, j + 1, e)
        value = orbit[j + 1]
        for p, ent in prof.entries.items():
            if ent.first_index <= j and valuation(p, value) != ent.exponent:
                prof.violations.append({"j": j + 1, "prime": p,
                                        "problem": "exponent changed"})
        if math.prod(p**ent.exponent for p, ent in prof.entries.items()) != value:
            prof.violations.append({"j": j + 1, "problem": "profile does not rebuild value"})
        prof.verified_through = j + 1
    return prof


@dataclass
class GrowthReport:
    rows: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    incomplete: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_star_growth_and_primecount(b_range, depth: int, budget: int = DEFAULT_BUDGET,
                                     digit_cap: int = DEFAULT_DIGIT_CAP) -> GrowthReport:
    """star^k(b) > b**(2**k) for 1 <= k <= depth, and star^k(b) has at least
    k+1 distinct prime factors (at least one when k = 0)."""
    rep = GrowthReport()
    for b in b_range:
        if b < 2:
            raise DomainError(f"bases must be >= 2, got {b}")
        prof = exponent_profile(b, depth, budget, digit_cap)
        orbit = star_orbit(b, depth, digit_cap)
        for k, value in enumerate(orbit):
            if k > prof.verified_through:
                rep.incomplete.append({"b": b, "k": k})
                continue
            distinct = sum(1 for e in prof.entries.values() if e.first_index <= k)
            row = {"b": b, "k": k, "distinct_primes": distinct}
            rep.rows.append(row)
            if k >= 1 and not value > b ** (2**k):
                rep.violations.append({**row, "problem": "growth bound"})
            if distinct < k + 1:
                rep.violations.append({**row, "problem": "too few distinct primes"})
    return rep


@dataclass
class PbObservation:
    b: int
    depth: int
    prime_bound: int
    observed: list[int]
    unobserved: list[int]


def pb_membership(b: int, depth: int, prime_bound: int, budget: int = DEFAULT_BUDGET,
                  digit_cap: int = DEFAULT_DIGIT_CAP) -> PbObservation:
    """Primes up to ``prime_bound`` seen dividing some star^j(b), j <= depth.

    Unobserved primes are undetermined, not excluded: they may still show
    up deeper in the orbit.
    """
    prof = exponent_profile(b, depth, budget, digit_cap)
    small = [int(p) for p in primes_up_to(prime_bound)]
    seen = [p for p in small if p in prof.entries]
    return PbObservation(b, prof.verified_through, prime_bound, seen,
                         [p for p in small if p not in prof.entries])


def orbit_factorizations(b: int, depth: int, budget: int = DEFAULT_BUDGET) -> list[FactorMap]:
    """Factorization of each star^j(b), built from the profile."""
    prof = exponent_profile(b, depth, budget)
    return [FactorMap({p: e.exponent for p, e in prof.entries.items() if e.first_index <= j})
            for j in range(prof.verified_through + 1)]
