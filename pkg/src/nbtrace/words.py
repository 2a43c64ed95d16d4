"""Reduced words in a finitely generated free group.

A word is a sequence of signed generator indices: ``+i`` is the i-th
generator, ``-i`` its inverse.  The text format writes generator i as the
i-th lowercase letter and its inverse as the matching uppercase letter,
so ``"abAB"`` is the commutator of the first two generators.

Enumeration order is lexicographic with letters ordered
``+1, -1, +2, -2, ...`` (generator index first, plain sign before
inverse), which keeps streams reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

__all__ = [
    "Word",
    "WordCount",
    "reduce_letters",
    "parse_word",
    "cyclic_reduce",
    "count_reduced",
    "count_cyclically_reduced",
    "enumerate_reduced",
    "enumerate_cyclically_reduced",
]

MAX_PRINTABLE_RANK = 26


def _letter_key(letter: int) -> tuple[int, int]:
    return (abs(letter), 0 if letter > 0 else 1)


def letter_order(k: int) -> list[int]:
    """All 2k letters of a rank-k free group in enumeration order."""
    out = []
    for g in range(1, k + 1):
        out.append(g)
        out.append(-g)
    return out


@dataclass(frozen=True, slots=True)
class Word:
    """A freely reduced word; construct via :func:`reduce_letters` or :func:`parse_word`."""

    letters: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.k < 1:
            raise ValueError("rank must be >= 1")
        prev = 0
        for ell in self.letters:
            if ell == 0 or abs(ell) > self.k:
                raise ValueError(f"letter {ell} outside rank {self.k}")
            if ell == -prev:
                raise ValueError("word is not freely reduced")
            prev = ell

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if self.k > MAX_PRINTABLE_RANK:
            raise ValueError("text format only supports rank <= 26")
        chars = []
        for ell in self.letters:
            base = ord("a") if ell > 0 else ord("A")
            chars.append(chr(base + abs(ell) - 1))
        return "".join(chars)

    def __mul__(self, other: "Word") -> "Word":
        if other.k != self.k:
            raise ValueError("words live in free groups of different rank")
        return reduce_letters(self.letters + other.letters, self.k)

    def inverse(self) -> "Word":
        return Word(tuple(-ell for ell in reversed(self.letters)), self.k)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word((), self.k)
        for _ in range(n):
            out = out * self
        return out

    def is_cyclically_reduced(self) -> bool:
        return len(self.letters) < 2 or self.letters[0] != -self.letters[-1]


@dataclass(frozen=True, slots=True)
class WordCount:
    """Exact count of cyclically reduced words of a given length."""

    k: int
    t: int
    count: int


def reduce_letters(letters: Sequence[int], k: int) -> Word:
    """Freely reduce a raw letter sequence (idempotent)."""
    stack: list[int] = []
    for ell in letters:
        if stack and stack[-1] == -ell:
            stack.pop()
        else:
            stack.append(ell)
    return Word(tuple(stack), k)


def parse_word(text: str, k: int) -> Word:
    """Parse the a/A text format and freely reduce.

    >>> parse_word("baAb", 2).letters
    (2, 2)
    >>> len(parse_word("aA", 2))
    0
    """
    if k > MAX_PRINTABLE_RANK:
        raise ValueError("text format only supports rank <= 26")
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            idx = ord(ch) - ord("a") + 1
        elif "A" <= ch <= "Z":
            idx = -(ord(ch) - ord("A") + 1)
        else:
            raise ValueError(f"unknown character {ch!r} in word")
        if abs(idx) > k:
            raise ValueError(f"letter {ch!r} beyond rank {k}")
        letters.append(idx)
    return reduce_letters(letters, k)


def cyclic_reduce(w: Word) -> Word:
    """Strip mutually inverse first/last letters until none remain."""
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
    return Word(tuple(letters), w.k)


def count_reduced(k: int, t: int) -> int:
    if t < 0:
        raise ValueError("length must be >= 0")
    if t == 0:
        return 1
    return 2 * k * (2 * k - 1) ** (t - 1)


def count_cyclically_reduced(k: int, t: int) -> WordCount:
    """Exact number of cyclically reduced words of length t in rank k.

    Equals ``(2k-1)^t + k + (-1)^t (k-1)``; Python integers make the
    arithmetic exact at any size.
    """
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    count = (2 * k - 1) ** t + k + (-1) ** t * (k - 1)
    return WordCount(k=k, t=t, count=count)


def enumerate_reduced(k: int, t: int) -> Iterator[Word]:
    """Yield every reduced word of length t exactly once, in lexicographic order."""
    if k < 1 or t < 0:
        raise ValueError("need k >= 1 and t >= 0")
    order = sorted(letter_order(k), key=_letter_key)
    if t == 0:
        yield Word((), k)
        return
    prefix: list[int] = []

    def extend() -> Iterator[Word]:
        if len(prefix) == t:
            yield Word(tuple(prefix), k)
            return
        for ell in order:
            if prefix and ell == -prefix[-1]:
                continue
            prefix.append(ell)
            yield from extend()
            prefix.pop()

    yield from extend()


def enumerate_cyclically_reduced(k: int, t: int) -> Iterator[Word]:
    """Yield every cyclically reduced word of length t exactly once.

    Same lexicographic order as :func:`enumerate_reduced`, restricted to
    words whose first letter is not the inverse of their last.
    """
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    for w in enumerate_reduced(k, t):
        if w.letters[0] != -w.letters[-1]:
            yield w
