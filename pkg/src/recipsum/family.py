"""Pairwise disjoint families of sets with a prescribed reciprocal sum.

For a base ``b >= 2`` every level ``W_k b`` (the values of all length-k
words at b) sums to ``1/b``.  Choosing levels that do not meet gives
disjoint sets of sum ``1/b``; gluing them ``a`` at a time gives disjoint
sets of sum ``a/b``.

Two ways of picking levels are offered:

``"star-index"``
    ``k_1 = 0`` and ``k_{j+1} = 1 + star^{k_j}(b)``.  Disjointness is
    automatic but the indices explode (b = 2 gives 0, 3, 1807, ...).
``"greedy"``
    The smallest indices whose levels are verified disjoint by direct
    intersection.  Usable at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .exact_arith import FinSet, format_rational, sigma, to_decimal
from .words import DEFAULT_DIGIT_CAP, DEFAULT_MAX_K, iter_levels, level_multiset, star

__all__ = [
    "RationalTarget",
    "IndexSequence",
    "paper_index_sequence",
    "LevelChoice",
    "greedy_disjoint_levels",
    "DisjointFamily",
    "disjoint_family",
    "Decomposition",
    "assemble_theorem1",
    "STRATEGIES",
]

STRATEGIES = ("greedy", "star-index")


@dataclass(frozen=True)
class RationalTarget:
    """The target ``a/b`` as given; ``(2, 4)`` and ``(1, 2)`` build different families."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1:
            raise DomainError(f"numerator must be >= 1, got {self.a}")
        if self.b < 2:
            raise DomainError(f"denominator must be >= 2, got {self.b}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.a, self.b)


@dataclass
class IndexSequence:
    b: int
    terms: list[int]
    truncated: bool
    reason: str = ""


def paper_index_sequence(b: int, max_terms: int = 10,
                         digit_cap: int = DEFAULT_DIGIT_CAP) -> IndexSequence:
    """Level indices ``k_1 = 0, k_{j+1} = 1 + star^{k_j}(b)``.

    Stops early, with ``truncated=True``, once the star iterate needed for
    the next term would have more than ``digit_cap`` decimal digits.  The
    test uses ``star^k(b) > b**(2**k)``, so it never computes an oversized
    value.
    """
    if b < 2:
        raise DomainError(f"base must be >= 2, got {b}")
    terms = [0]
    while len(terms) < max_terms:
        k = terms[-1]
        # lower bound on the digit count of star^k(b)
        if k > 64 or (2**k) * math.log10(b) > digit_cap:
            return IndexSequence(b, terms, True,
                                 f"term {len(terms) + 1} needs an iterate beyond "
                                 f"digit_cap={digit_cap}")
        x = b
        for _ in range(k):
            x = star(x)
            if x.bit_length() * math.log10(2) > digit_cap:
                return IndexSequence(b, terms, True,
                                     f"term {len(terms) + 1} needs an iterate beyond "
                                     f"digit_cap={digit_cap}")
        terms.append(1 + x)
    return IndexSequence(b, terms, False)


@dataclass
class LevelChoice:
    b: int
    requested: int
    indices: list[int]
    strategy: str
    k_max: int

    @property
    def complete(self) -> bool:
        return len(self.indices) >= self.requested


def greedy_disjoint_levels(b: int, count: int, k_max: int = 16, *,
                           max_k: int = DEFAULT_MAX_K,
                           digit_cap: int = DEFAULT_DIGIT_CAP) -> LevelChoice:
    """Smallest level indices ``<= k_max`` whose levels are pairwise disjoint.

    A level joins when it misses the union of the levels already chosen.
    May return fewer than ``count`` indices; check ``LevelChoice.complete``.
    """
    if b < 2:
        raise DomainError(f"base must be >= 2, got {b}")
    chosen: list[int] = []
    union: set[int] = set()
    if count < 1:
        return LevelChoice(b, count, chosen, "greedy", k_max)
    try:
        for level in iter_levels(b, min(k_max, max_k), max_k=max_k, digit_cap=digit_cap):
            if union.isdisjoint(level.values):
                chosen.append(level.k)
                union.update(level.values)
                if len(chosen) == count:
                    break
    except ResourceLimitError:
        pass
    return LevelChoice(b, count, chosen, "greedy", k_max)


@dataclass
class DisjointFamily:
    """Levels ``W_k b`` for the given indices, each summing to ``1/b``."""

    b: int
    level_indices: list[int]
    members: list[FinSet]
    strategy: str = "greedy"

    def verify(self) -> list[str]:
        problems = []
        seen: set[int] = set()
        for k, member in zip(self.level_indices, self.members):
            if sigma(member) != Fraction(1, self.b):
                problems.append(f"level {k}: sigma {sigma(member)} != 1/{self.b}")
            if not seen.isdisjoint(member):
                problems.append(f"level {k} meets an earlier member")
            seen.update(member)
        return problems


def disjoint_family(b: int, indices: list[int], strategy: str = "greedy", *,
                    max_k: int = DEFAULT_MAX_K,
                    digit_cap: int = DEFAULT_DIGIT_CAP) -> DisjointFamily:
    members = [level_multiset(k, b, max_k=max_k, digit_cap=digit_cap).as_finset()
               for k in indices]
    return DisjointFamily(b, list(indices), members, strategy)


@dataclass
class Decomposition:
    target: RationalTarget
    strategy: str
    level_indices: list[int]
    blocks: list[FinSet]
    block_levels: list[list[int]] = field(default_factory=list)

    def records(self) -> list[dict]:
        """One record per block: b, a, block id, elements, sigma (as text)."""
        return [
            {"b": str(self.target.b), "a": str(self.target.a), "block_id": i + 1,
             "level_indices": levels, "elements": [to_decimal(x) for x in block],
             "sigma": format_rational(sigma(block))}
            for i, (block, levels) in enumerate(zip(self.blocks, self.block_levels))
        ]


def _indices_for(target: RationalTarget, needed: int, k_max: int, strategy: str,
                 max_k: int, digit_cap: int) -> list[int]:
    if strategy == "greedy":
        return greedy_disjoint_levels(target.b, needed, k_max, max_k=max_k,
                                      digit_cap=digit_cap).indices
    if strategy == "star-index":
        seq = paper_index_sequence(target.b, needed, digit_cap)
        return [k for k in seq.terms if k <= min(k_max, max_k)]
    raise DomainError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def assemble_theorem1(target: RationalTarget, count: int, k_max: int = 16, *,
                      strategy: str = "greedy", max_k: int = DEFAULT_MAX_K,
                      digit_cap: int = DEFAULT_DIGIT_CAP) -> Decomposition:
    """``count`` pairwise disjoint sets, each with reciprocal sum exactly ``a/b``.

    Block i is the union of disjoint levels ``a*i .. a*i + a - 1`` from the
    chosen index list.  Raises :class:`ResourceLimitError` (with the number
    of blocks that could be built in ``achieved``) when ``k_max`` does not
    leave enough disjoint levels.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    a = target.a
    needed = a * count
    indices = _indices_for(target, needed, k_max, strategy, max_k, digit_cap)
    if len(indices) < needed:
        raise ResourceLimitError(
            f"only {len(indices)} disjoint levels within k_max={k_max}; "
            f"{needed} needed for {count} blocks of {a}",
            cap="k_max", achieved=len(indices) // a)
    indices = indices[:needed]
    family = disjoint_family(target.b, indices, strategy, max_k=max_k, digit_cap=digit_cap)
    blocks, block_levels = [], []
    for i in range(count):
        parts = family.members[a * i : a * i + a]
        elements: list[int] = []
        for part in parts:
            elements.extend(part)
        blocks.append(FinSet(elements))
        block_levels.append(indices[a * i : a * i + a])
    return Decomposition(target, strategy, indices, blocks, block_levels)
