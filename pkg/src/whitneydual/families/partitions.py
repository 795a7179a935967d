"""Set partition lattices, noncrossing partitions and minimum labelings."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Callable, Sequence

from ..errors import NotGeometric
from ..labeling import EdgeLabeling, LexOrder
from ..poset import Poset, join, is_lattice
from ._common import block_name, check_cap, generate

Partition = tuple[tuple[int, ...], ...]


def canonical(blocks) -> Partition:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_name(p: Partition) -> str:
    return "/".join(block_name(b) for b in p)


def set_partitions(n: int) -> list[Partition]:
    """All set partitions of [n] via restricted growth strings."""
    out = []

    def grow(word: list[int], top: int) -> None:
        if len(word) == n:
            blocks: dict[int, list[int]] = {}
            for i, b in enumerate(word, start=1):
                blocks.setdefault(b, []).append(i)
            out.append(canonical(blocks.values()))
            return
        for b in range(top + 2):
            word.append(b)
            grow(word, max(top, b))
            word.pop()

    grow([], -1)
    return out


def is_noncrossing(p: Partition) -> bool:
    where = {v: k for k, block in enumerate(p) for v in block}
    for a, b, c, d in combinations(sorted(where), 4):
        if where[a] == where[c] and where[b] == where[d] and where[a] != where[b]:
            return False
    return True


def _merges(p: Partition):
    for i, j in combinations(range(len(p)), 2):
        rest = [blk for k, blk in enumerate(p) if k not in (i, j)]
        yield p[i], p[j], canonical(rest + [p[i] + p[j]])


def _bottom(n: int) -> Partition:
    return tuple((i,) for i in range(1, n + 1))


@lru_cache(maxsize=None)
def partition_lattice(n: int, cap: int | None = None) -> tuple[Poset, EdgeLabeling]:
    """Pi_n with the minimum labeling (min B_i, min B_j)."""
    check_cap("pi", n, cap)

    def covers(p):
        for a, b, q in _merges(p):
            yield q, (a[0], b[0])

    P, labels = generate(_bottom(n), covers, partition_name)
    return P, EdgeLabeling(P, labels, LexOrder(), name="min")


@lru_cache(maxsize=None)
def noncrossing_lattice(n: int, cap: int | None = None) -> tuple[Poset, EdgeLabeling]:
    """NC_n labeled by max{a in B_i : a < min B_j} (single integers)."""
    check_cap("nc", n, cap)

    def covers(p):
        for a, b, q in _merges(p):
            if is_noncrossing(q):
                yield q, max(v for v in a if v < b[0])

    P, labels = generate(_bottom(n), covers, partition_name)
    return P, EdgeLabeling(P, labels, LexOrder(), name="nc")


def is_geometric(L: Poset) -> bool:
    if not is_lattice(L):
        return False
    atoms = L.upper_covers[L.min_element]
    for x in range(L.n):
        j = L.min_element
        for a in atoms:
            if L.leq(a, x):
                j = join(L, j, a)
        if j != x:
            return False
    for x in range(L.n):
        for y1, y2 in combinations(L.upper_covers[x], 2):
            if L.rank[join(L, y1, y2)] != L.rank[x] + 2:
                return False
    return True


def minimum_labeling(L: Poset, atom_order: Sequence[int] | None = None,
                     label_of_atom: Callable[[int], object] | None = None) -> EdgeLabeling:
    """Label x < y by the first atom a (in ``atom_order``) with x v a = y.

    By default the label is the 1-based position of that atom in the order.
    """
    if not is_geometric(L):
        raise NotGeometric("minimum labelings need an atomic semimodular lattice")
    atoms = list(atom_order) if atom_order is not None else list(L.upper_covers[L.min_element])
    if sorted(atoms) != sorted(L.upper_covers[L.min_element]):
        raise ValueError("atom_order must be a permutation of the atoms")
    if label_of_atom is None:
        position = {a: k for k, a in enumerate(atoms, start=1)}
        label_of_atom = position.__getitem__
    labels = {}
    for x, y in L.covers:
        for a in atoms:
            if join(L, x, a) == y:
                labels[(x, y)] = label_of_atom(a)
                break
    return EdgeLabeling(L, labels, LexOrder(), name="min")
