"""Words over {diamond, star} acting on positive integers.

``diamond`` is n -> n+1 and ``star`` is n -> n(n+1).  A word is written
left to right and applied right to left, so ``Word.parse("dssddd")`` sends
n to ``diamond(star(star(n + 3)))``.  In text form ``d`` is diamond and ``s``
is star; the empty string is the identity word.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, ResourceLimitError

__all__ = [
    "Letter",
    "Word",
    "DIAMOND",
    "STAR",
    "diamond",
    "star",
    "apply",
    "words_of_length",
    "LevelMultiset",
    "level_multiset",
    "iter_levels",
    "preimages",
    "LengthReport",
    "check_length_uniqueness",
    "DEFAULT_MAX_K",
    "DEFAULT_DIGIT_CAP",
    "DEFAULT_LENGTH_CAP",
]

DEFAULT_MAX_K = 20
DEFAULT_DIGIT_CAP = 100_000
# preimage words are spelled out letter by letter, and the longest has n - b letters
DEFAULT_LENGTH_CAP = 20_000

_LOG10_2 = math.log10(2)


def diamond(n: int) -> int:
    return n + 1


def star(n: int) -> int:
    return n * (n + 1)


class Letter(enum.Enum):
    DIAMOND = "d"
    STAR = "s"

    def __call__(self, n: int) -> int:
        return n + 1 if self is Letter.DIAMOND else n * (n + 1)


DIAMOND = Letter.DIAMOND
STAR = Letter.STAR


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def parse(cls, text: str) -> "Word":
        try:
            return cls(tuple(Letter(ch) for ch in text.strip()))
        except ValueError:
            raise DomainError(f"word text must be over {{d, s}}, got {text!r}") from None

    @classmethod
    def diamonds(cls, count: int) -> "Word":
        return cls((DIAMOND,) * count)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(letter.value for letter in self.letters)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __add__(self, other: "Word") -> "Word":
        """Concatenation; ``(u + v)(n) == u(v(n))``."""
        return Word(self.letters + other.letters)

    def __call__(self, n: int) -> int:
        return apply(self, n)

    def pretty(self) -> str:
        """Run-length form with the glyphs, e.g. ``◇★²◇³``."""
        sup = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
        out = []
        for letter, run in itertools.groupby(self.letters):
            k = len(list(run))
            glyph = "◇" if letter is DIAMOND else "★"
            out.append(glyph + (str(k).translate(sup) if k > 1 else ""))
        return "".join(out) or "ε"


def apply(w: Word | str, n: int) -> int:
    """Value of the word ``w`` at ``n``, rightmost letter first."""
    if isinstance(w, str):
        w = Word.parse(w)
    if n < 1:
        raise DomainError(f"words act on positive integers, got {n}")
    for letter in reversed(w.letters):
        n = n + 1 if letter is DIAMOND else n * (n + 1)
    return n


def words_of_length(k: int) -> Iterator[Word]:
    """All 2**k words of length k (brute-force enumeration)."""
    for letters in itertools.product((DIAMOND, STAR), repeat=k):
        yield Word(letters)


def _digits_upper(n: int) -> int:
    return int(n.bit_length() * _LOG10_2) + 1


@dataclass(frozen=True)
class LevelMultiset:
    """All values ``w(b)`` over words of length ``k``, ascending, repeats kept."""

    k: int
    b: int
    values: tuple[int, ...]

    @property
    def counts(self) -> Counter:
        return Counter(self.values)

    @property
    def simple(self) -> bool:
        return all(x < y for x, y in zip(self.values, self.values[1:]))

    def __len__(self) -> int:
        return len(self.values)

    def as_finset(self):
        from .exact_arith import FinSet

        if not self.simple:
            raise DomainError(f"level {self.k} at base {self.b} has repeated values")
        return FinSet(self.values)


def iter_levels(b: int, k_max: int, *, max_k: int = DEFAULT_MAX_K,
                digit_cap: int = DEFAULT_DIGIT_CAP) -> Iterator[LevelMultiset]:
    """Yield levels 0, 1, ..., k_max at base ``b``.

    Each level is built from the previous one by applying both letters to
    every value, so nothing is recomputed per word.
    """
    if b < 1:
        raise DomainError(f"base must be >= 1, got {b}")
    if k_max > max_k:
        raise ResourceLimitError(f"level {k_max} exceeds max_k={max_k}", cap="max_k",
                                 achieved=max_k)
    current = [b]
    for k in range(k_max + 1):
        if k:
            top = current[-1] if b > 1 else max(current)
            if _digits_upper(top) * 2 > digit_cap:
                raise ResourceLimitError(
                    f"level {k} at base {b} has values beyond digit_cap={digit_cap}",
                    cap="digit_cap", achieved=k - 1)
            current = sorted([v + 1 for v in current] + [v * (v + 1) for v in current])
        yield LevelMultiset(k, b, tuple(current))


def level_multiset(k: int, b: int, *, max_k: int = DEFAULT_MAX_K,
                   digit_cap: int = DEFAULT_DIGIT_CAP) -> LevelMultiset:
    """The multiset of ``w(b)`` over all words of length ``k``.

    For ``b >= 2`` every value occurs once; for ``b = 1`` repeats are kept
    (diamond and star agree at 1).
    """
    if k < 0:
        raise DomainError(f"level index must be >= 0, got {k}")
    level = None
    for level in iter_levels(b, k, max_k=max_k, digit_cap=digit_cap):
        pass
    return level


@lru_cache(maxsize=None)
def _preimages(b: int, n: int) -> tuple[Word, ...]:
    out = [Word.diamonds(n - b)]
    k = b
    while k * (k + 1) <= n:
        head = Word.diamonds(n - k * (k + 1)) + Word((STAR,))
        out.extend(head + u for u in _preimages(b, k))
        k += 1
    return tuple(sorted(out, key=lambda w: (len(w), str(w))))


def preimages(b: int, n: int, *, length_cap: int = DEFAULT_LENGTH_CAP) -> tuple[Word, ...]:
    """Every word ``w`` with ``w(b) == n``, shortest first.

    Such a word is either all diamonds, or it ends a star step from some
    ``k`` with ``b <= k`` and ``k(k+1) <= n`` and is padded with diamonds on
    the left; the recursion walks those ``k``.
    """
    if b < 2:
        raise DomainError(f"preimages needs b >= 2, got {b}")
    if n < b:
        raise DomainError(f"no word sends {b} down to {n}")
    if n - b > length_cap:
        raise ResourceLimitError(f"the all-diamond preimage has {n - b} letters, over "
                                 f"length_cap={length_cap}", cap="length_cap", achieved=0)
    return _preimages(b, n)


@dataclass
class LengthReport:
    b: int
    n_max: int
    checked: int = 0
    words_seen: int = 0
    violations: list[dict] = None

    def __post_init__(self):
        if self.violations is None:
            self.violations = []

    @property
    def ok(self) -> bool:
        return not self.violations


def check_length_uniqueness(b: int, n_max: int) -> LengthReport:
    """Check that words hitting the same n from b have distinct lengths.

    Also checks that the all-diamond word is the unique longest one.
    """
    if b < 2:
        raise DomainError(f"length uniqueness is stated for b >= 2, got {b}")
    report = LengthReport(b, n_max)
    for n in range(b, n_max + 1):
        ws = preimages(b, n)
        report.checked += 1
        report.words_seen += len(ws)
        lengths = [len(w) for w in ws]
        if len(set(lengths)) != len(lengths):
            report.violations.append({"n": n, "problem": "repeated length",
                                      "words": [str(w) for w in ws]})
        longest = max(ws, key=len)
        if longest != Word.diamonds(n - b) or lengths.count(len(longest)) != 1:
            report.violations.append({"n": n, "problem": "longest word is not all diamonds",
                                      "words": [str(w) for w in ws]})
        for w in ws:
            if apply(w, b) != n:
                report.violations.append({"n": n, "problem": "bad preimage", "word": str(w)})
    return report


def brute_preimages(b: int, n: int) -> set[Word]:
    """Exhaustive search for words with ``w(b) == n``.

    Grows words leftward one letter at a time and drops any branch whose
    running value passes n; letters only increase, so nothing is missed.
    """
    found = set()
    stack = [(b, ())]
    while stack:
        v, letters = stack.pop()
        if v == n:
            found.add(Word(letters))
        for letter in (DIAMOND, STAR):
            nv = letter(v)
            if nv <= n:
                stack.append((nv, (letter,) + letters))
    return found


def all_words(max_len: int) -> Iterable[Word]:
    for k in range(max_len + 1):
        yield from words_of_length(k)
