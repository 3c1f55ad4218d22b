"""Exact sums of reciprocals over finite sets of positive integers.

Values are plain Python ints (arbitrary precision) and
:class:`fractions.Fraction` (always stored in lowest terms), so the
numerator/denominator pair of a sum is the coprime pair directly.
"""

from __future__ import annotations

import math
import re
from collections.abc import Iterable, Iterator, Sequence
from fractions import Fraction

import gmpy2

from .errors import DomainError

__all__ = [
    "FinSet",
    "as_finset",
    "sigma",
    "nu",
    "delta",
    "mu",
    "weighted_sigma",
    "tree_sum",
    "format_rational",
    "parse_rational",
    "to_decimal",
    "from_decimal",
]

# CPython refuses int <-> str beyond 4300 digits by default; gmpy2 has no such limit
_STR_SAFE_BITS = 14_000
_DECIMAL = re.compile(r"-?[0-9]+")


def to_decimal(n: int) -> str:
    """Decimal text of ``n`` at any size."""
    if -(1 << _STR_SAFE_BITS) < n < (1 << _STR_SAFE_BITS):
        return str(n)
    return gmpy2.mpz(n).digits()


def from_decimal(text: str) -> int:
    """Inverse of :func:`to_decimal`; raises DomainError on anything but digits."""
    s = text.strip()
    if not _DECIMAL.fullmatch(s):
        raise DomainError(f"not a decimal integer: {text[:40]!r}")
    return int(s) if len(s) < 4000 else int(gmpy2.mpz(s))


class FinSet(Sequence[int]):
    """Finite set of distinct positive integers, kept in ascending order.

    Construction sorts the input and rejects duplicates instead of silently
    merging them; a multiset is a different object and callers have to say
    which one they mean.
    """

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[int] = ()):
        items = sorted(int(x) for x in elements)
        if items and items[0] < 1:
            raise DomainError(f"elements must be positive integers, got {items[0]}")
        for prev, cur in zip(items, items[1:]):
            if prev == cur:
                raise DomainError(f"duplicate element {cur}")
        self._elements = tuple(items)

    @classmethod
    def interval(cls, m: int, n: int) -> "FinSet":
        """The interval ``[m, n] = {m, m+1, ..., n}``."""
        if m < 1 or n < m:
            raise DomainError(f"need 1 <= m <= n, got [{m},{n}]")
        obj = cls.__new__(cls)
        obj._elements = tuple(range(m, n + 1))
        return obj

    @classmethod
    def parse(cls, text: str) -> "FinSet":
        """Parse ``"{a,b,c}"`` (any order) or the interval form ``"m..n"``."""
        s = text.strip()
        m = re.fullmatch(r"(\d+)\s*\.\.\s*(\d+)", s)
        if m:
            return cls.interval(int(m.group(1)), int(m.group(2)))
        if not (s.startswith("{") and s.endswith("}")):
            raise DomainError(f"cannot parse set literal {text!r}")
        body = s[1:-1].strip()
        if not body:
            return cls()
        parts = [p.strip() for p in body.split(",")]
        if not all(_DECIMAL.fullmatch(p) and p[0] != "-" for p in parts):
            raise DomainError(f"cannot parse set literal {text!r}")
        return cls(from_decimal(p) for p in parts)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def __getitem__(self, i):
        return self._elements[i]

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, x) -> bool:
        # binary search; elements are sorted
        els = self._elements
        lo, hi = 0, len(els)
        while lo < hi:
            mid = (lo + hi) // 2
            if els[mid] < x:
                lo = mid + 1
            else:
                hi = mid
        return lo < len(els) and els[lo] == x

    def __eq__(self, other) -> bool:
        if isinstance(other, FinSet):
            return self._elements == other._elements
        if isinstance(other, (set, frozenset)):
            return set(self._elements) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"FinSet({list(self._elements)})"

    def __str__(self) -> str:
        return "{" + ",".join(to_decimal(x) for x in self._elements) + "}"

    def min(self) -> int:
        self._require_nonempty("min")
        return self._elements[0]

    def max(self) -> int:
        self._require_nonempty("max")
        return self._elements[-1]

    def isdisjoint(self, other: Iterable[int]) -> bool:
        return set(self._elements).isdisjoint(other)

    def union(self, other: Iterable[int]) -> "FinSet":
        """Union with a set that must not overlap this one."""
        return FinSet(self._elements + tuple(other))

    def without(self, x: int) -> "FinSet":
        if x not in self:
            raise DomainError(f"{x} is not an element of {self}")
        return FinSet(e for e in self._elements if e != x)

    def _require_nonempty(self, op: str) -> None:
        if not self._elements:
            raise DomainError(f"{op} of the empty set is undefined")


def as_finset(S: Iterable[int]) -> FinSet:
    return S if isinstance(S, FinSet) else FinSet(S)


def _nonempty(S: Iterable[int], op: str) -> FinSet:
    S = as_finset(S)
    if not len(S):
        raise DomainError(f"{op} requires a nonempty set")
    return S


def tree_sum(terms: Sequence[Fraction]) -> Fraction:
    """Sum fractions by pairwise reduction (a balanced binary tree).

    Keeps intermediate denominators close in size, which is far cheaper than
    left-to-right accumulation when the summands have huge denominators.
    """
    level = list(terms)
    if not level:
        return Fraction(0)
    while len(level) > 1:
        nxt = [level[i] + level[i + 1] for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            nxt.append(level[-1])
        level = nxt
    return level[0]


def sigma(S: Iterable[int]) -> Fraction:
    """Sum of the reciprocals of the elements of ``S``, in lowest terms.

    >>> sigma({2, 3, 6})
    Fraction(1, 1)
    """
    S = _nonempty(S, "sigma")
    return tree_sum([Fraction(1, x) for x in S])


def nu(S: Iterable[int]) -> int:
    """Numerator of ``sigma(S)`` in lowest terms."""
    return sigma(S).numerator


def delta(S: Iterable[int]) -> int:
    """Denominator of ``sigma(S)`` in lowest terms."""
    return sigma(S).denominator


def mu(S: Iterable[int]) -> int:
    """Least common multiple of the elements of ``S``."""
    S = _nonempty(S, "mu")
    return math.lcm(*S)


def weighted_sigma(terms: Iterable[tuple[int, int, int]]) -> Fraction:
    """Exact value of ``sum(weight / base**exponent)`` over distinct bases.

    Each term is a ``(base, weight, exponent)`` triple of positive integers.
    """
    fracs = []
    seen = set()
    for base, weight, exponent in terms:
        if base < 1 or weight < 1 or exponent < 1:
            raise DomainError(f"term ({base},{weight},{exponent}) must be all positive")
        if base in seen:
            raise DomainError(f"duplicate base {base}")
        seen.add(base)
        fracs.append(Fraction(weight, base**exponent))
    if not fracs:
        raise DomainError("weighted_sigma requires at least one term")
    return tree_sum(fracs)


def format_rational(q: Fraction) -> str:
    """Canonical text form ``"num/den"``; integers keep the ``/1``."""
    return f"{to_decimal(q.numerator)}/{to_decimal(q.denominator)}"


def parse_rational(text: str) -> Fraction:
    num, sep, den = text.strip().partition("/")
    try:
        n, d = from_decimal(num), from_decimal(den)
    except DomainError:
        n = d = -1
    if not sep or n < 0 or d < 1:
        raise DomainError(f"cannot parse rational {text[:60]!r}")
    return Fraction(n, d)
