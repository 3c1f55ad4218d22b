"""Prime-power structure of reciprocal sums over intervals and finite sets.

A prime power p**v is a *sylvester power* of X when p**v exactly divides
lcm(X) and divides exactly one element of X.  Each such power exactly
divides the reduced denominator of the reciprocal sum of X, which is what
drives the non-integrality and injectivity results checked here.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import DomainError
from .exact_arith import FinSet, as_finset, delta, mu, sigma, weighted_sigma
from .primes import factor, is_prime, primes_up_to, smallest_factor_table, valuation

__all__ = [
    "Interval",
    "SylvesterPower",
    "valuation",
    "sylvester_powers",
    "interval_sylvester_powers",
    "sylvester_key",
    "Report",
    "verify_two_power_lemma",
    "verify_delta_divisibility",
    "check_theisinger_kurschak",
    "integral_intervals_from",
    "erdos_niven_scan",
    "interval_sigmas",
    "quadruple_scan",
    "interval_sylvester_index",
    "check_chebyshev",
    "check_sylvester_theorem",
    "verify_prime_theorems",
    "erdos_progression_sum",
    "check_erdos_progressions",
    "check_belbachir_khelladi",
    "check_oblath",
    "verify_nonintegrality",
    "check_theorem_3_6",
]


class Interval(NamedTuple):
    m: int
    n: int

    def finset(self) -> FinSet:
        return FinSet.interval(self.m, self.n)

    def __len__(self) -> int:
        return self.n - self.m + 1

    def __str__(self) -> str:
        return f"[{self.m},{self.n}]"


class SylvesterPower(NamedTuple):
    p: int
    v: int

    @property
    def value(self) -> int:
        return self.p**self.v

    def __str__(self) -> str:
        return f"{self.p}^{self.v}" if self.v > 1 else str(self.p)


@dataclass
class Report:
    """Outcome of a bounded check: what was looked at and what went wrong."""

    name: str
    parameters: dict
    checked: int = 0
    violations: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    findings: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _count_multiples(elements, q: int) -> int:
    return sum(1 for x in elements if x % q == 0)


def sylvester_powers(X: Iterable[int]) -> frozenset[SylvesterPower]:
    """All sylvester powers of the finite set X.

    For intervals this dispatches to :func:`interval_sylvester_powers`, which
    needs no factoring at all.
    """
    X = as_finset(X)
    if not len(X):
        raise DomainError("sylvester_powers needs a nonempty set")
    els = X.elements
    if els[-1] - els[0] + 1 == len(els):
        return interval_sylvester_powers(els[0], els[-1])
    top: dict[int, int] = {}
    for x in els:
        for p, e in factor(x).items():
            if e > top.get(p, 0):
                top[p] = e
    return frozenset(SylvesterPower(p, v) for p, v in top.items()
                     if _count_multiples(els, p**v) == 1)


def interval_sylvester_powers(m: int, n: int) -> frozenset[SylvesterPower]:
    """Sylvester powers of [m, n] from counting multiples of prime powers.

    For each prime p <= n, the top power p**v dividing some element is the
    largest one with a multiple in [m, n]; it is sylvester when that
    multiple is unique.
    """
    if m < 1 or n < m:
        raise DomainError(f"need 1 <= m <= n, got [{m},{n}]")
    out = []
    for p in _primes_cached(n):
        if p > n:
            break
        q, v = p, 1
        if n // q == (m - 1) // q:
            continue  # p divides nothing in [m, n]
        while n // (q * p) > (m - 1) // (q * p):
            q *= p
            v += 1
        if n // q - (m - 1) // q == 1:
            out.append(SylvesterPower(p, v))
    return frozenset(out)


@lru_cache(maxsize=8)
def _primes_table(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(limit))


def _primes_cached(n: int) -> tuple[int, ...]:
    limit = 1 << max(10, n.bit_length())
    return _primes_table(limit)


def sylvester_key(S: Iterable[SylvesterPower]) -> tuple[tuple[int, int], ...]:
    """Canonical sorted encoding used to compare sylvester sets."""
    return tuple(sorted((sp.p, sp.v) for sp in S))


def verify_two_power_lemma(bound: int) -> Report:
    """For all 1 <= m <= n <= bound with 2**v exactly dividing lcm[m, n]:
    exactly one multiple of 2**v lies in [m, n], and n - m + 1 < 2**(v+1)."""
    rep = Report("two-power", {"bound": bound})
    for m in range(1, bound + 1):
        for n in range(m, bound + 1):
            v = n.bit_length() - 1
            while n // (1 << v) == (m - 1) // (1 << v):
                v -= 1
            q = 1 << v
            count = n // q - (m - 1) // q
            rep.checked += 1
            if count != 1 or n - m + 1 >= 2 * q:
                rep.violations.append({"m": m, "n": n, "v": v, "multiples": count})
    return rep


def verify_delta_divisibility(X: Iterable[int]) -> Report:
    """Each sylvester power p**v of X must exactly divide the reduced denominator."""
    X = as_finset(X)
    d = delta(X)
    rep = Report("delta-divisibility", {"set": str(X)})
    rep.witnesses["delta"] = d
    for sp in sorted(sylvester_powers(X)):
        rep.checked += 1
        got = valuation(sp.p, d)
        if got != sp.v:
            rep.violations.append({"power": str(sp), "valuation_in_delta": got})
    return rep


def check_theorem_3_6(X: Iterable[int], Y: Iterable[int]) -> Report:
    """Where some p**v is sylvester for X but not Y and p**v > max Y - min Y,
    the denominators (hence the sums) of X and Y must differ."""
    X, Y = as_finset(X), as_finset(Y)
    rep = Report("theorem-3.6", {"X": str(X), "Y": str(Y)})
    SX, SY = sylvester_powers(X), sylvester_powers(Y)
    spread = Y.max() - Y.min()
    hits = [sp for sp in SX - SY if sp.value > spread]
    rep.witnesses["separating_powers"] = [str(sp) for sp in sorted(hits)]
    if hits:
        rep.checked = 1
        if delta(X) == delta(Y) or sigma(X) == sigma(Y):
            rep.violations.append({"X": str(X), "Y": str(Y)})
    return rep


# -- harmonic interval sums ------------------------------------------------


def integral_intervals_from(m: int, n_max: int) -> list[int]:
    """All n in [m, n_max] with sigma[m, n] an integer.

    Walks n upward keeping ``L = lcm[m, n]`` and ``N = L * sigma[m, n]``
    as exact integers; sigma[m, n] is an integer exactly when L divides N.
    """
    hits = []
    L, N = 1, 0
    for x in range(m, n_max + 1):
        g = math.gcd(L, x)
        scale = x // g
        L *= scale
        N = N * scale + L // x
        if N % L == 0:
            hits.append(x)
    return hits


def check_theisinger_kurschak(m_max: int, n_max: int) -> Report:
    """List every interval [m, n] (m <= m_max, n <= n_max) with integral sum.

    Only [1, 1] is expected.
    """
    rep = Report("theisinger-kurschak", {"m_max": m_max, "n_max": n_max})
    for m in range(1, m_max + 1):
        for n in integral_intervals_from(m, n_max):
            rep.findings.append(Interval(m, n))
            if (m, n) != (1, 1):
                rep.violations.append(Interval(m, n))
        rep.checked += max(0, n_max - m + 1)
    return rep


def interval_sigmas(m: int, n_max: int) -> list[tuple[int, int]]:
    """Reduced ``(num, den)`` of sigma[m, n] for n = m .. n_max."""
    out = []
    L, N = 1, 0
    for x in range(m, n_max + 1):
        g = math.gcd(L, x)
        scale = x // g
        L *= scale
        N = N * scale + L // x
        h = math.gcd(N, L)
        out.append((N // h, L // h))
    return out


def erdos_niven_scan(N: int) -> Report:
    """Check that the N(N+1)/2 interval sums inside [1, N] are pairwise distinct."""
    rep = Report("erdos-niven", {"N": N})
    seen: dict[tuple[int, int], Interval] = {}
    for m in range(1, N + 1):
        for offset, key in enumerate(interval_sigmas(m, N)):
            iv = Interval(m, m + offset)
            rep.checked += 1
            other = seen.setdefault(key, iv)
            if other != iv:
                rep.violations.append((other, iv))
    rep.witnesses["distinct_values"] = len(seen)
    return rep


# -- equal sylvester sets on disjoint intervals ----------------------------


def interval_sylvester_index(bound: int) -> dict[tuple, list[Interval]]:
    """Group the intervals 1 < m < n <= bound by their sylvester set."""
    groups: dict[tuple, list[Interval]] = defaultdict(list)
    for m in range(2, bound + 1):
        for n in range(m + 1, bound + 1):
            groups[sylvester_key(interval_sylvester_powers(m, n))].append(Interval(m, n))
    return groups


def quadruple_scan(bound: int) -> Report:
    """All (m, n, m', n') with 1 < m < n < m' < n' <= bound and S[m,n] = S[m',n'].

    A quadruple with n - m <= n' - m' contradicts the conjectured rule and is
    reported as a violation.
    """
    if bound < 4:
        raise DomainError(f"bound must be >= 4, got {bound}")
    rep = Report("quadruple", {"bound": bound})
    groups = interval_sylvester_index(bound)
    for key, ivs in groups.items():
        rep.checked += len(ivs)
        for a in ivs:
            for b in ivs:
                if a.n < b.m:
                    quad = (a.m, a.n, b.m, b.n)
                    rep.findings.append(quad)
                    if a.n - a.m <= b.n - b.m:
                        rep.violations.append(quad)
    rep.findings.sort()
    rep.violations.sort()
    return rep


# -- classical prime theorems ----------------------------------------------


def check_chebyshev(n_max: int) -> Report:
    """For each 2 <= n <= n_max find a prime strictly between n and 2n."""
    rep = Report("chebyshev", {"n_max": n_max})
    primes = primes_up_to(2 * n_max)
    ns = np.arange(2, n_max + 1)
    idx = np.searchsorted(primes, ns, side="right")
    nxt = primes[np.minimum(idx, len(primes) - 1)]
    bad = (idx >= len(primes)) | (nxt >= 2 * ns)
    rep.checked = len(ns)
    rep.violations = [int(n) for n in ns[bad]]
    rep.witnesses = {int(n): int(p) for n, p in zip(ns[:20], nxt[:20])}
    rep.witnesses["max_ratio"] = float(np.max(nxt / ns)) if len(ns) else None
    return rep


def check_sylvester_theorem(n_max: int) -> Report:
    """For each [m, n] with m <= n < 2m and n <= n_max, some prime p > n - m
    divides lcm[m, n].

    [1, 1] is the lone exception (its lcm has no prime divisor) and is
    listed under ``skipped``.
    """
    rep = Report("sylvester-theorem", {"n_max": n_max})
    spf = smallest_factor_table(max(n_max, 2))

    def largest_pf(x: int) -> int:
        best = 1
        while x > 1:
            p = int(spf[x])
            best = max(best, p)
            while x % p == 0:
                x //= p
        return best

    lpf = [0, 1] + [largest_pf(x) for x in range(2, n_max + 1)]
    rep.skipped.append(Interval(1, 1))
    for m in range(2, n_max + 1):
        best = 0
        for n in range(m, min(2 * m - 1, n_max) + 1):
            best = max(best, lpf[n])
            rep.checked += 1
            if best <= n - m:
                rep.violations.append(Interval(m, n))
    return rep


def verify_prime_theorems(n_max: int, sylvester_max: int | None = None) -> Report:
    cheb = check_chebyshev(n_max)
    syl = check_sylvester_theorem(sylvester_max or n_max)
    rep = Report("prime-theorems", {"n_max": n_max, "sylvester_max": sylvester_max or n_max})
    rep.checked = cheb.checked + syl.checked
    rep.violations = [("chebyshev", v) for v in cheb.violations] + \
                     [("sylvester", v) for v in syl.violations]
    rep.skipped = syl.skipped
    rep.witnesses = {"chebyshev": cheb.witnesses}
    return rep


# -- non-integral sums of progressions ---------------------------------------


def erdos_progression_sum(m: int, d: int, k: int) -> Fraction:
    """Exact value of sum_{j<k} 1/(m + d*j)."""
    return weighted_sigma((m + d * j, 1, 1) for j in range(k))


def _progression_sums(m: int, d: int, k_max: int):
    """Running reduced sums for k = 1..k_max (incremental lcm bookkeeping)."""
    L, N = 1, 0
    for j in range(k_max):
        x = m + d * j
        g = math.gcd(L, x)
        scale = x // g
        L *= scale
        N = N * scale + L // x
        yield j + 1, N, L


def check_erdos_progressions(m_range: range, d_range: range, k_range: range) -> Report:
    """Sums of reciprocals of arithmetic progressions are never integers,
    except the excluded corner m = 1, k = 1."""
    rep = Report("erdos-progression", {"m": [m_range.start, m_range.stop - 1],
                                       "d": [d_range.start, d_range.stop - 1],
                                       "k": [k_range.start, k_range.stop - 1]})
    k_hi = k_range.stop - 1
    for m in m_range:
        for d in d_range:
            if d < 1:
                rep.skipped.append({"m": m, "d": d, "reason": "d < 1"})
                continue
            for k, N, L in _progression_sums(m, d, k_hi):
                if k not in k_range:
                    continue
                if m == 1 and k == 1:
                    rep.skipped.append({"m": m, "d": d, "k": k, "reason": "excluded corner"})
                    continue
                rep.checked += 1
                if N % L == 0:
                    rep.violations.append({"m": m, "d": d, "k": k})
    return rep


def check_belbachir_khelladi(count: int, seed: int = 0, *, m_max: int = 40,
                             d_max: int = 30, k_max: int = 25, a_max: int = 6) -> Report:
    """Random cases of sum_j 1/(m + d*j)**a_j; none may be an integer."""
    rng = random.Random(seed)
    rep = Report("belbachir-khelladi", {"count": count, "seed": seed})
    while rep.checked < count:
        m = rng.randint(1, m_max)
        d = rng.randint(1, d_max)
        k = rng.randint(1, k_max)
        a = [rng.randint(1, a_max) for _ in range(k)]
        if m == 1 and k == 1:
            rep.skipped.append({"m": m, "d": d, "k": k, "a": a})
            continue
        value = weighted_sigma((m + d * j, 1, a[j]) for j in range(k))
        rep.checked += 1
        if value.denominator == 1:
            rep.violations.append({"m": m, "d": d, "k": k, "a": a})
    return rep


def check_oblath(m_range: range, length_range: range, weights_per_case: int = 5,
                 seed: int = 0, *, weight_max: int = 50, rule: str = "odd-at-even") -> Report:
    """Sums sum_{i=m}^{n} a_i / i with random weights satisfying ``rule``.

    ``rule="coprime"`` draws each a_i coprime to i.  ``rule="odd-at-even"``
    only forces a_i odd when i is even; it needs an even number in the
    interval (for a lone odd i, a_i = i gives 1), so such cases are skipped.
    """
    rng = random.Random(seed)
    if rule not in ("coprime", "odd-at-even"):
        raise DomainError(f"rule must be 'coprime' or 'odd-at-even', got {rule!r}")
    rep = Report(f"oblath-{rule}", {"rule": rule, "m": [m_range.start, m_range.stop - 1],
                            "length": [length_range.start, length_range.stop - 1]})
    for m in m_range:
        for length in length_range:
            n = m + length - 1
            if (m, n) == (1, 1):
                rep.skipped.append({"m": m, "n": n, "reason": "interval is {1}"})
                continue
            if rule == "odd-at-even" and m == n and m % 2:
                rep.skipped.append({"m": m, "n": n, "reason": "no even index"})
                continue
            for _ in range(weights_per_case):
                weights = []
                for i in range(m, n + 1):
                    while True:
                        a = rng.randint(1, weight_max)
                        if rule == "coprime" and math.gcd(a, i) == 1:
                            break
                        if rule == "odd-at-even" and (i % 2 or a % 2):
                            break
                    weights.append(a)
                value = weighted_sigma((i, a, 1) for i, a in zip(range(m, n + 1), weights))
                rep.checked += 1
                if value.denominator == 1:
                    rep.violations.append({"m": m, "n": n, "weights": weights})
    return rep


def verify_nonintegrality(*, m_max: int = 50, d_max: int = 50, k_max: int = 50,
                          belbachir_count: int = 200, oblath_m_max: int = 30,
                          oblath_len_max: int = 12, seed: int = 0) -> Report:
    """Run the progression, exponent-vector and weighted-sum families together."""
    parts = [
        check_erdos_progressions(range(1, m_max + 1), range(1, d_max + 1), range(1, k_max + 1)),
        check_belbachir_khelladi(belbachir_count, seed),
        check_oblath(range(1, oblath_m_max + 1), range(1, oblath_len_max + 1), seed=seed,
                     rule="coprime"),
        check_oblath(range(1, oblath_m_max + 1), range(1, oblath_len_max + 1), seed=seed,
                     rule="odd-at-even"),
    ]
    rep = Report("nonintegrality", {"m_max": m_max, "d_max": d_max, "k_max": k_max,
                                    "belbachir_count": belbachir_count, "seed": seed})
    for part in parts:
        rep.checked += part.checked
        rep.violations += [(part.name, v) for v in part.violations]
        rep.skipped += [(part.name, s) for s in part.skipped]
        rep.witnesses[part.name] = part.checked
    return rep


def mu_interval(m: int, n: int) -> int:
    return mu(FinSet.interval(m, n))


def lcm_valuation(p: int, X: Iterable[int]) -> int:
    """Valuation of p in lcm(X), as the largest valuation over the elements."""
    return max(valuation(p, x) for x in X)


def is_sylvester_power(p: int, v: int, X: Iterable[int]) -> bool:
    X = as_finset(X)
    if not is_prime(p) or v < 1:
        return False
    return lcm_valuation(p, X) == v and _count_multiples(X, p**v) == 1
