"""Core graphs of finitely generated subgroups of a free group.

A core graph is a folded, basepointed digraph whose darts carry generator
labels.  Folded means no vertex has two outgoing or two incoming darts
with the same label, so a folded graph is a tuple of partial injections
on its vertex set.  Graphs are stored in a canonical numbering (breadth
first from the basepoint, scanning labels in order, outgoing before
incoming), which makes basepointed isomorphism a plain equality check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .words import Word, reduce_letters

__all__ = [
    "CoreGraph",
    "SubgroupBasis",
    "fold",
    "core_of_word",
    "bouquet",
    "contains",
    "basis_of",
    "rewrite_in_basis",
    "quotients",
    "canonical_form",
]

DEFAULT_QUOTIENT_VERTEX_CAP = 10

Dart = tuple[int, int, int]  # (source vertex, generator label, target vertex)


@dataclass(frozen=True)
class CoreGraph:
    """Folded basepointed labeled digraph; basepoint is vertex 0."""

    k: int
    n_vertices: int
    darts: tuple[Dart, ...]

    def __post_init__(self):
        object.__setattr__(self, "darts", tuple(sorted(self.darts)))
        seen_out = set()
        seen_in = set()
        for u, j, v in self.darts:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise ValueError("dart endpoint out of range")
            if not (1 <= j <= self.k):
                raise ValueError("dart label out of range")
            if (u, j) in seen_out or (v, j) in seen_in:
                raise ValueError("graph is not folded")
            seen_out.add((u, j))
            seen_in.add((v, j))

    @cached_property
    def _out(self) -> dict[tuple[int, int], int]:
        return {(u, j): v for u, j, v in self.darts}

    @cached_property
    def _in(self) -> dict[tuple[int, int], int]:
        return {(v, j): u for u, j, v in self.darts}

    def out(self, v: int, label: int) -> int | None:
        return self._out.get((v, label))

    def inn(self, v: int, label: int) -> int | None:
        return self._in.get((v, label))

    def step(self, v: int, letter: int) -> int | None:
        """Follow a signed letter from v; inverse letters traverse darts backward."""
        if letter > 0:
            return self.out(v, letter)
        return self.inn(v, -letter)

    @property
    def rank(self) -> int:
        return len(self.darts) - self.n_vertices + 1

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, _, w in self.darts)

    def contains(self, w: Word) -> bool:
        return contains(self, w)

    def canonical_form(self) -> str:
        return canonical_form(self)


def bouquet(k: int, labels: Iterable[int] | None = None) -> CoreGraph:
    """One-vertex graph with a loop per label (defaults to all of 1..k)."""
    labels = range(1, k + 1) if labels is None else labels
    return CoreGraph(k=k, n_vertices=1, darts=tuple((0, j, 0) for j in labels))


def fold(n_vertices: int, darts: Iterable[Dart], k: int, basepoint: int = 0) -> CoreGraph:
    """Fold an arbitrary pre-graph into a core graph.

    Identifies same-label darts sharing an endpoint until folded, keeps the
    basepoint component, trims hanging non-basepoint vertices, and renumbers
    canonically.  The subgroup represented (loops at the basepoint) is
    unchanged by any of these steps.
    """
    parent = list(range(n_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    dart_set = {(u, j, v) for u, j, v in darts}
    while True:
        dart_set = {(find(u), j, find(v)) for u, j, v in dart_set}
        out_seen: dict[tuple[int, int], int] = {}
        in_seen: dict[tuple[int, int], int] = {}
        conflict = None
        for u, j, v in dart_set:
            if (u, j) in out_seen and out_seen[(u, j)] != v:
                conflict = (v, out_seen[(u, j)])
                break
            out_seen[(u, j)] = v
            if (v, j) in in_seen and in_seen[(v, j)] != u:
                conflict = (u, in_seen[(v, j)])
                break
            in_seen[(v, j)] = u
        if conflict is None:
            break
        a, b = conflict
        parent[find(a)] = find(b)

    base = find(basepoint)

    # restrict to the basepoint component
    adj: dict[int, list[Dart]] = {}
    for u, j, v in dart_set:
        adj.setdefault(u, []).append((u, j, v))
        adj.setdefault(v, []).append((u, j, v))
    reachable = {base}
    stack = [base]
    while stack:
        x = stack.pop()
        for u, _, v in adj.get(x, ()):
            for y in (u, v):
                if y not in reachable:
                    reachable.add(y)
                    stack.append(y)
    dart_set = {d for d in dart_set if d[0] in reachable}

    # trim hanging vertices (degree counts loops twice)
    while True:
        deg: dict[int, int] = {v: 0 for v in reachable}
        for u, _, v in dart_set:
            deg[u] += 1
            deg[v] += 1
        dead = {v for v, dg in deg.items() if dg <= 1 and v != base}
        if not dead:
            break
        reachable -= dead
        dart_set = {d for d in dart_set if d[0] not in dead and d[2] not in dead}

    return _canonical_renumber(reachable, dart_set, k, base)


def _canonical_renumber(vertices: set[int], dart_set: set[Dart], k: int, base: int) -> CoreGraph:
    out_map = {(u, j): v for u, j, v in dart_set}
    in_map = {(v, j): u for u, j, v in dart_set}
    number = {base: 0}
    queue = [base]
    while queue:
        x = queue.pop(0)
        for j in range(1, k + 1):
            for y in (out_map.get((x, j)), in_map.get((x, j))):
                if y is not None and y not in number:
                    number[y] = len(number)
                    queue.append(y)
    if len(number) != len(vertices):
        raise AssertionError("folded graph not connected")
    new_darts = tuple((number[u], j, number[v]) for u, j, v in dart_set)
    return CoreGraph(k=k, n_vertices=len(number), darts=new_darts)


def core_of_word(w: Word) -> CoreGraph:
    """Core graph of the cyclic subgroup generated by w: a folded loop spelling w."""
    t = len(w)
    if t == 0:
        return CoreGraph(k=w.k, n_vertices=1, darts=())
    darts = []
    for i, ell in enumerate(w.letters):
        u, v = i, (i + 1) % t
        if ell > 0:
            darts.append((u, ell, v))
        else:
            darts.append((v, -ell, u))
    return fold(t, darts, w.k)


def contains(g: CoreGraph, w: Word) -> bool:
    """Whether w traces a closed loop at the basepoint of g."""
    v = 0
    for ell in w.letters:
        nxt = g.step(v, ell)
        if nxt is None:
            return False
        v = nxt
    return v == 0


@dataclass(frozen=True)
class SubgroupBasis:
    """Free generators of the subgroup a core graph represents."""

    words: tuple[Word, ...]
    tree_darts: frozenset[Dart]
    nontree_darts: tuple[Dart, ...]


def basis_of(g: CoreGraph, rng=None) -> SubgroupBasis:
    """Spanning-tree basis: one generator per dart outside a breadth-first tree.

    The default tree scans labels in order (outgoing before incoming), so
    the basis is deterministic.  Passing a random generator shuffles the
    scan order per vertex, which picks a different tree; the rank and the
    subgroup are of course unchanged.
    """
    tree: set[Dart] = set()
    visited = {0}
    word_to: dict[int, tuple[int, ...]] = {0: ()}
    queue = [0]
    while queue:
        x = queue.pop(0)
        moves = []
        for j in range(1, g.k + 1):
            moves.append((j, True))
            moves.append((j, False))
        if rng is not None:
            rng.shuffle(moves)
        for j, forward in moves:
            if forward:
                y = g.out(x, j)
                dart = (x, j, y) if y is not None else None
                letter = j
            else:
                y = g.inn(x, j)
                dart = (y, j, x) if y is not None else None
                letter = -j
            if y is not None and y not in visited:
                visited.add(y)
                tree.add(dart)
                word_to[y] = word_to[x] + (letter,)
                queue.append(y)
    nontree = tuple(d for d in g.darts if d not in tree)
    basis = []
    for u, j, v in nontree:
        letters = word_to[u] + (j,) + tuple(-ell for ell in reversed(word_to[v]))
        basis.append(reduce_letters(letters, g.k))
    return SubgroupBasis(words=tuple(basis), tree_darts=frozenset(tree), nontree_darts=nontree)


def rewrite_in_basis(g: CoreGraph, basis: SubgroupBasis, w: Word) -> Word:
    """Express w as a word in the basis generators (rank-many fresh letters).

    Traces w from the basepoint and records each crossing of a non-tree
    dart, signed by direction.  Expanding the result through the basis
    words and reducing gives back w.
    """
    rank = len(basis.nontree_darts)
    index = {d: i + 1 for i, d in enumerate(basis.nontree_darts)}
    out_letters = []
    v = 0
    for ell in w.letters:
        nxt = g.step(v, ell)
        if nxt is None:
            raise ValueError("word does not lie in the subgroup")
        dart = (v, ell, nxt) if ell > 0 else (nxt, -ell, v)
        if dart in index:
            out_letters.append(index[dart] if ell > 0 else -index[dart])
        v = nxt
    if v != 0:
        raise ValueError("word does not lie in the subgroup")
    return reduce_letters(out_letters, max(rank, 1))


def _set_partitions(n: int) -> Iterator[list[int]]:
    """Restricted-growth strings: every partition of {0..n-1}, block of 0 first."""
    assign = [0] * n

    def rec(i: int, maxblock: int) -> Iterator[list[int]]:
        if i == n:
            yield list(assign)
            return
        for b in range(maxblock + 2):
            assign[i] = b
            yield from rec(i + 1, max(maxblock, b))

    yield from rec(1, 0)


def quotients(
    g: CoreGraph, max_vertices: int = DEFAULT_QUOTIENT_VERTEX_CAP
) -> Iterator[CoreGraph]:
    """Every distinct folded quotient of g, over all vertex partitions.

    The block containing the basepoint becomes the new basepoint.  Results
    are deduplicated by canonical form; the full identification (all
    vertices merged) always appears.
    """
    if g.n_vertices > max_vertices:
        raise ValueError(
            f"quotient enumeration capped at {max_vertices} vertices, graph has {g.n_vertices}"
        )
    seen = set()
    for assign in _set_partitions(g.n_vertices):
        n_blocks = max(assign) + 1
        darts = [(assign[u], j, assign[v]) for u, j, v in g.darts]
        q = fold(n_blocks, darts, g.k)
        if q not in seen:
            seen.add(q)
            yield q


def canonical_form(g: CoreGraph) -> str:
    """String equal for two graphs iff they are isomorphic as basepointed labeled digraphs."""
    body = ",".join(f"{u}-{j}>{v}" for u, j, v in g.darts)
    return f"v{g.n_vertices};k{g.k};{body}"
