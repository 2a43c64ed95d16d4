"""Primitivity rank and critical subgroups of free-group words.

A word is primitive in rank r if it belongs to some free basis.  The
primitivity rank of w is the smallest rank of a subgroup containing w as
an imprimitive element; it is infinite exactly when w is primitive, and
the subgroups achieving the minimum are the critical subgroups.

Primitivity is decided by greedy Whitehead descent: while some Whitehead
automorphism strictly shortens the cyclic word, apply the first one found;
peak reduction guarantees the descent ends at the minimal cyclic length in
the automorphism orbit, which is 1 precisely for primitive words.  The
critical subgroups are found among the folded quotients of the core graph
of the cyclic subgroup generated by w.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .stallings import CoreGraph, basis_of, contains, core_of_word, quotients, rewrite_in_basis
from .words import Word, cyclic_reduce, enumerate_cyclically_reduced, enumerate_reduced, reduce_letters

__all__ = [
    "WhiteheadMove",
    "WordClassification",
    "whitehead_moves",
    "apply_whitehead",
    "is_primitive",
    "is_proper_power",
    "primitivity_rank",
    "crit_sum",
    "classification_counts",
]

FIX, RIGHT_MULT, LEFT_INV_MULT, CONJUGATE = 0, 1, 2, 3


@dataclass(frozen=True)
class WhiteheadMove:
    """A Whitehead automorphism of the second kind.

    ``multiplier`` is a signed generator a; each other generator x is
    either fixed, sent to x*a, to a^-1*x, or to a^-1*x*a, per the action
    codes.  The multiplier's own generator is always fixed.
    """

    multiplier: int
    actions: tuple[int, ...]  # one code per generator 1..r

    @property
    def rank(self) -> int:
        return len(self.actions)


def whitehead_moves(r: int) -> Iterator[WhiteheadMove]:
    """All non-trivial type-II Whitehead moves of rank r: 2r * (4^(r-1) - 1) of them."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    others = list(range(1, r + 1))
    for gen in range(1, r + 1):
        rest = [g for g in others if g != gen]
        for sign in (1, -1):
            mult = sign * gen
            stack = [()]
            for _ in rest:
                stack = [codes + (c,) for codes in stack for c in range(4)]
            for codes in stack:
                if all(c == FIX for c in codes):
                    continue
                actions = [FIX] * r
                for g, c in zip(rest, codes):
                    actions[g - 1] = c
                yield WhiteheadMove(multiplier=mult, actions=tuple(actions))


def apply_whitehead(move: WhiteheadMove, w: Word) -> Word:
    a = move.multiplier
    images: dict[int, tuple[int, ...]] = {}
    for g in range(1, move.rank + 1):
        code = move.actions[g - 1]
        if g == abs(a) or code == FIX:
            images[g] = (g,)
        elif code == RIGHT_MULT:
            images[g] = (g, a)
        elif code == LEFT_INV_MULT:
            images[g] = (-a, g)
        else:
            images[g] = (-a, g, a)
    out: list[int] = []
    for ell in w.letters:
        img = images[abs(ell)]
        if ell > 0:
            out.extend(img)
        else:
            out.extend(-x for x in reversed(img))
    return reduce_letters(out, max(w.k, move.rank))


@lru_cache(maxsize=None)
def _moves_list(r: int) -> tuple[WhiteheadMove, ...]:
    return tuple(whitehead_moves(r))


def is_primitive(w: Word, r: int) -> bool:
    """Whether w belongs to some free basis of the rank-r free group.

    The empty word is not primitive; words of cyclic length 1 are.
    """
    if any(abs(ell) > r for ell in w.letters):
        raise ValueError("word uses letters beyond the given rank")
    if len(w) == 0:
        return False
    cw = cyclic_reduce(Word(w.letters, max(w.k, r)))
    moves = _moves_list(r)
    improved = True
    while improved and len(cw) > 1:
        improved = False
        for mv in moves:
            u = cyclic_reduce(apply_whitehead(mv, cw))
            if len(u) < len(cw):
                cw = u
                improved = True
                break
    return len(cw) == 1


def is_proper_power(w: Word) -> bool:
    """Whether w = u^d for some d >= 2 (checked on the cyclic reduction)."""
    cw = cyclic_reduce(w)
    t = len(cw)
    if t == 0:
        return False
    for period in range(1, t // 2 + 1):
        if t % period:
            continue
        if all(cw.letters[i] == cw.letters[i % period] for i in range(t)):
            return True
    return False


@dataclass(frozen=True)
class WordClassification:
    """A word with its primitivity rank and critical subgroups."""

    word: Word
    pi: float  # integer rank, or math.inf for primitive words
    crit: tuple[CoreGraph, ...]

    @property
    def crit_size(self) -> int:
        return len(self.crit)


def _imprimitive_in(g: CoreGraph, w: Word, rng=None) -> bool:
    """Whether w lies in the subgroup of g and is not part of any of its bases."""
    basis = basis_of(g, rng=rng)
    rewritten = rewrite_in_basis(g, basis, w)
    r = g.rank
    if r == 0:
        return False
    if r == 1:
        # rank-1 Whitehead move set is empty; a power of the generator is
        # imprimitive exactly when the exponent exceeds 1 in absolute value
        return len(rewritten) >= 2
    return not is_primitive(rewritten, r)


def primitivity_rank(
    w: Word, max_core_vertices: int = 10, _tree_rng=None
) -> WordClassification:
    """Classify w: primitivity rank plus the critical subgroups achieving it.

    Works on the cyclic reduction of w (rank and critical-subgroup count are
    conjugation invariants).  Scans the folded quotients of the core graph
    of <w> in increasing rank; ranks beyond the ambient rank cannot carry
    the minimum and are skipped.  For the empty word the rank is 0 and the
    critical list is empty by convention.
    """
    cw = cyclic_reduce(w)
    if len(cw) == 0:
        return WordClassification(word=cw, pi=0, crit=())
    core = core_of_word(cw)
    by_rank: dict[int, list[CoreGraph]] = {}
    for q in quotients(core, max_vertices=max_core_vertices):
        by_rank.setdefault(q.rank, []).append(q)
    for r in range(1, cw.k + 1):
        witnesses = []
        for q in by_rank.get(r, ()):
            if not contains(q, cw):
                raise AssertionError("quotient lost membership of the defining word")
            if _imprimitive_in(q, cw, rng=_tree_rng):
                witnesses.append(q)
        if witnesses:
            return WordClassification(word=cw, pi=r, crit=tuple(witnesses))
    return WordClassification(word=cw, pi=math.inf, crit=())


# classification results keyed by a symmetry-canonical form of the cyclic
# reduction: rank and critical-subgroup count are invariant under cyclic
# rotation, inversion, and signed relabeling of the generators
_PI_CRIT_CACHE: dict[tuple[tuple[int, ...], int], tuple[float, int]] = {}


@lru_cache(maxsize=None)
def _signed_permutations(k: int) -> tuple[tuple[int, ...], ...]:
    # maps[g-1] = image of +g as a signed letter
    perms: list[list[int]] = [[]]
    for _ in range(k):
        perms = [p + [g] for p in perms for g in range(1, k + 1) if g not in [abs(x) for x in p]]
    out = []
    for p in perms:
        for mask in range(1 << k):
            out.append(tuple(p[i] if not (mask >> i) & 1 else -p[i] for i in range(k)))
    return tuple(out)


def _orbit_canonical(letters: tuple[int, ...], k: int, perms) -> tuple[int, ...]:
    t = len(letters)
    if t == 0:
        return letters
    best = None
    inv = tuple(-x for x in reversed(letters))
    for seq in (letters, inv):
        for shift in range(t):
            rot = seq[shift:] + seq[:shift]
            for pm in perms:
                cand = tuple(pm[abs(x) - 1] if x > 0 else -pm[abs(x) - 1] for x in rot)
                if best is None or cand < best:
                    best = cand
    return best


def pi_and_crit_size(w: Word, max_core_vertices: int = 10) -> tuple[float, int]:
    """(rank, number of critical subgroups) with caching across the symmetry orbit."""
    cw = cyclic_reduce(w)
    perms = _signed_permutations(cw.k)
    key = (_orbit_canonical(cw.letters, cw.k, perms), cw.k)
    hit = _PI_CRIT_CACHE.get(key)
    if hit is None:
        cls = primitivity_rank(Word(key[0], cw.k), max_core_vertices=max_core_vertices)
        hit = (cls.pi, cls.crit_size)
        _PI_CRIT_CACHE[key] = hit
    return hit


def crit_sum(k: int, t: int, m: int, domain: str = "cyclic", max_core_vertices: int = 10) -> int:
    """Sum of critical-subgroup counts over length-t words of primitivity rank m.

    ``domain`` selects the summation set: cyclically reduced words
    (default) or all reduced words.
    """
    if domain not in ("cyclic", "reduced"):
        raise ValueError("domain must be 'cyclic' or 'reduced'")
    if not 1 <= m <= k:
        raise ValueError("target rank must be in 1..k")
    stream = enumerate_cyclically_reduced(k, t) if domain == "cyclic" else enumerate_reduced(k, t)
    total = 0
    for w in stream:
        pi, ncrit = pi_and_crit_size(w, max_core_vertices=max_core_vertices)
        if pi == m:
            total += ncrit
    return total


def classification_counts(
    k: int, t: int, domain: str = "cyclic", max_core_vertices: int = 10
) -> dict[float, tuple[int, int]]:
    """Per-rank tallies over all length-t words: rank -> (word count, crit sum)."""
    stream = enumerate_cyclically_reduced(k, t) if domain == "cyclic" else enumerate_reduced(k, t)
    out: dict[float, tuple[int, int]] = {}
    for w in stream:
        pi, ncrit = pi_and_crit_size(w, max_core_vertices=max_core_vertices)
        n, c = out.get(pi, (0, 0))
        out[pi] = (n + 1, c + ncrit)
    return out
