"""Reciprocal-sum-preserving set sequences.

From a seed set A_1, each step removes the least element x for which
neither x+1 nor x(x+1) is present and inserts both.  Since
1/x = 1/(x+1) + 1/(x(x+1)), the reciprocal sum never changes and the set
grows by exactly one element per step.
"""

from __future__ import annotations

import bisect
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ResourceLimitError
from .exact_arith import FinSet, as_finset, from_decimal, sigma, to_decimal

__all__ = [
    "replaceable",
    "step",
    "SeqState",
    "iter_states",
    "Trace",
    "run",
    "DisjointSubsequence",
    "disjoint_subsequence",
    "DEFAULT_STEP_CAP",
]

DEFAULT_STEP_CAP = 200_000


def _replaceable(elements: list[int], members: set[int]) -> int:
    for x in elements:
        if x + 1 not in members and x * (x + 1) not in members:
            return x
    # unreachable: the maximum x always qualifies since x+1 and x(x+1) exceed it
    raise AssertionError(f"no replaceable element in {elements}")


def _split(x: int) -> tuple[int, int]:
    if x == 1:
        # 1 + 1 == 1 * 2, so splitting 1 would repeat 2
        raise DomainError("the replaceable element is 1, whose two children coincide")
    return x + 1, x * (x + 1)


def replaceable(A: Iterable[int]) -> int:
    """Least x in A with neither x+1 nor x(x+1) in A."""
    A = as_finset(A)
    if not len(A):
        raise DomainError("replaceable needs a nonempty set")
    return _replaceable(list(A), set(A))


def step(A: Iterable[int]) -> FinSet:
    """Replace the replaceable element x by x+1 and x(x+1)."""
    A = as_finset(A)
    x = replaceable(A)
    return FinSet([e for e in A if e != x] + list(_split(x)))


@dataclass(frozen=True)
class SeqState:
    """Term ``A_index``, plus the element it gives up to form the next term."""

    index: int
    elements: tuple[int, ...]
    replaced: int

    @property
    def min(self) -> int:
        return self.elements[0]

    @property
    def doomed(self) -> bool:
        return self.replaced == self.elements[0]

    def record(self) -> dict:
        return {"index": self.index, "elements": [to_decimal(x) for x in self.elements],
                "min": to_decimal(self.min), "replaced": to_decimal(self.replaced),
                "doomed": self.doomed}

    @classmethod
    def from_record(cls, rec: dict) -> "SeqState":
        try:
            elements = tuple(from_decimal(x) for x in rec["elements"])
            return cls(int(rec["index"]), elements, from_decimal(rec["replaced"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed sequence state record ({exc})") from None


def iter_states(seed: Iterable[int], start_index: int = 1) -> Iterator[SeqState]:
    """Endless stream of states, starting at ``seed`` taken as ``A_start_index``."""
    seed = as_finset(seed)
    if not len(seed):
        raise DomainError("the seed must be nonempty")
    elements = list(seed)
    members = set(seed)
    i = start_index
    while True:
        x = _replaceable(elements, members)
        children = _split(x)
        yield SeqState(i, tuple(elements), x)
        elements.pop(bisect.bisect_left(elements, x))
        members.discard(x)
        for y in children:
            bisect.insort(elements, y)
            members.add(y)
        i += 1


@dataclass
class Trace:
    """Terms ``A_1 .. A_last`` (or only statistics when states are not kept)."""

    seed: FinSet
    sigma_value: Fraction
    last: SeqState
    states: list[SeqState] = field(default_factory=list)
    first_index_of_min: dict[int, int] = field(default_factory=dict)
    doomed: list[tuple[int, int]] = field(default_factory=list)

    @property
    def final(self) -> FinSet:
        return FinSet(self.last.elements)


def run(seed: Iterable[int], steps: int, *, keep_states: bool = True,
        step_cap: int = DEFAULT_STEP_CAP, start: SeqState | None = None) -> Trace:
    """Follow the sequence from ``seed`` up to the term ``A_steps``.

    ``steps`` is the index of the last term, so ``run({2}, 6)`` ends at
    ``A_6`` and ``steps <= 1`` returns the seed alone.  Passing ``start`` (a
    state read back from a saved trace) resumes from that term instead of
    from the seed.

    Records the first index at which each minimum appears and every doomed
    event, i.e. a replaced element that was also the minimum.
    """
    seed = as_finset(seed)
    last_index = max(steps, 1)
    if last_index > step_cap:
        raise ResourceLimitError(f"{steps} steps exceed step_cap={step_cap}",
                                 cap="horizon", achieved=step_cap)
    if start is None:
        states = iter_states(seed)
    else:
        states = iter_states(start.elements, start.index)
    trace = None
    for st in states:
        if trace is None:
            trace = Trace(seed, sigma(st.elements), st)
        trace.last = st
        if keep_states:
            trace.states.append(st)
        trace.first_index_of_min.setdefault(st.min, st.index)
        if st.doomed:
            trace.doomed.append((st.index, st.replaced))
        if st.index >= last_index:
            break
    return trace


@dataclass
class DisjointSubsequence:
    """Greedy indices ``j_1 < j_2 < ...`` with pairwise disjoint terms.

    ``secured[i]`` tells whether the i-th selected term also has its minimum
    above every element selected before it (the stronger condition that
    guarantees disjointness without looking).  ``secure_threshold`` is the
    largest element selected so far: a later term is certain to be
    disjoint once its minimum exceeds it.
    """

    indices: list[int]
    secured: list[bool]
    horizon: int
    secure_threshold: int


def disjoint_subsequence(seed: Iterable[int], horizon: int, *,
                         step_cap: int = DEFAULT_STEP_CAP) -> DisjointSubsequence:
    """Greedy pairwise disjoint subsequence within the first ``horizon`` terms.

    ``j_1 = 1``; then each ``j`` is the least index whose term misses every
    element of the terms already selected.  For seed {2} this yields 1, 2, 5.
    """
    if horizon > step_cap:
        raise ResourceLimitError(f"horizon {horizon} exceeds step_cap={step_cap}",
                                 cap="horizon", achieved=step_cap)
    indices: list[int] = []
    secured: list[bool] = []
    used: set[int] = set()
    top = 0
    for st in iter_states(seed):
        if st.index > horizon:
            break
        if used.isdisjoint(st.elements):
            indices.append(st.index)
            secured.append(st.min > top)
            used.update(st.elements)
            top = max(top, st.elements[-1])
    return DisjointSubsequence(indices, secured, horizon, top)
