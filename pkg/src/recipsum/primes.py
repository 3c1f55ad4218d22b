"""Primes, valuations and integer factorization.

Trial division by sieved primes, then Brent's variant of Pollard rho for
whatever cofactor is left.  Primality below 3.3e24 is decided by
Miller-Rabin with the first thirteen prime bases, which is a proof in that
range; above it the strong BPSW test is used and factors are flagged as
uncertified.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Iterator, Mapping
from functools import lru_cache

import gmpy2
import numpy as np

from .errors import DomainError

__all__ = [
    "primes_up_to",
    "smallest_factor_table",
    "is_prime",
    "valuation",
    "FactorMap",
    "factor",
    "DEFAULT_BUDGET",
]

# Miller-Rabin with these bases is deterministic for n < 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981

TRIAL_LIMIT = 10_000
DEFAULT_BUDGET = 5_000_000  # total rho iterations per factor() call


def primes_up_to(n: int) -> np.ndarray:
    """All primes ``<= n`` as an int64 array (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def smallest_factor_table(n: int) -> np.ndarray:
    """``spf[x]`` = least prime factor of x for ``2 <= x <= n`` (0 and 1 map to 0)."""
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in primes_up_to(math.isqrt(n)):
        p = int(p)
        block = spf[p * p :: p]
        block[block == 0] = p
    idx = np.arange(n + 1)
    mask = (spf == 0) & (idx >= 2)
    spf[mask] = idx[mask]
    return spf


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(TRIAL_LIMIT))


def _miller_rabin(n: int, bases: Iterable[int]) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < _MR_LIMIT:
        return _miller_rabin(n, _MR_BASES)
    return bool(gmpy2.is_strong_bpsw_prp(n))


def is_certified_prime(n: int) -> bool:
    """True when ``is_prime(n)`` is a proof rather than a probable-prime test."""
    return n < _MR_LIMIT


def valuation(p: int, n: int) -> int:
    """The exponent v with ``p**v`` exactly dividing ``n``."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if n < 1:
        raise DomainError(f"valuation needs n >= 1, got {n}")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class FactorMap(Mapping[int, int]):
    """Prime -> exponent map, iterated in ascending prime order.

    ``remainder`` holds any composite cofactor left when the effort budget ran
    out; a complete factorization has ``remainder == 1``.
    """

    __slots__ = ("_items", "remainder", "certified")

    def __init__(self, exponents: Mapping[int, int] | Iterable[tuple[int, int]] = (),
                 remainder: int = 1, certified: bool = True):
        items = dict(exponents)
        for p, e in items.items():
            if e < 1:
                raise DomainError(f"exponent of {p} must be >= 1, got {e}")
        self._items = dict(sorted(items.items()))
        self.remainder = remainder
        self.certified = certified

    def __getitem__(self, p: int) -> int:
        return self._items[p]

    def __iter__(self) -> Iterator[int]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __repr__(self) -> str:
        extra = "" if self.complete else f", remainder={self.remainder}"
        return f"FactorMap({self._items}{extra})"

    def __str__(self) -> str:
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self._items.items()]
        if not self.complete:
            parts.append(f"[{self.remainder}]")
        return "*".join(parts) if parts else "1"

    @property
    def complete(self) -> bool:
        return self.remainder == 1

    def value(self) -> int:
        """Product of ``p**e`` (times any unfactored remainder)."""
        out = self.remainder
        for p, e in self._items.items():
            out *= p**e
        return out

    def merged(self, other: "FactorMap") -> "FactorMap":
        """Factorization of the product of two factorizations."""
        items = dict(self._items)
        for p, e in other.items():
            items[p] = items.get(p, 0) + e
        return FactorMap(items, self.remainder * other.remainder,
                         self.certified and other.certified)


def _brent(n: int, budget: int, rng: random.Random) -> tuple[int | None, int]:
    """One Brent-rho attempt; returns (nontrivial factor or None, iterations used)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    used = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        used += r
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        used += min(r, k)
        r *= 2
        if used > budget:
            return None, used
    if g == n:
        # backtrack one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return (g if g != n else None), used


def factor(n: int, budget: int = DEFAULT_BUDGET, seed: int = 0) -> FactorMap:
    """Prime factorization of ``n >= 1``.

    ``budget`` caps the total number of rho iterations.  When it runs out the
    unsplit composite part is left in ``FactorMap.remainder``.
    """
    if n < 1:
        raise DomainError(f"factor needs n >= 1, got {n}")
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    remainder = 1
    certified = True
    rng = random.Random(seed)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            found[m] = found.get(m, 0) + 1
            certified = certified and is_certified_prime(m)
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = None
        while d is None and budget > 0:
            d, used = _brent(m, budget, rng)
            budget -= used
        if d is None:
            remainder *= m
            continue
        stack += [d, m // d]
    return FactorMap(found, remainder, certified)
