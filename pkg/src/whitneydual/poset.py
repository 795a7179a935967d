"""Finite graded posets with a minimum: construction, Möbius function,
Whitney numbers, chains, isomorphism and a few structural predicates."""

from __future__ import annotations

import threading
from collections import defaultdict, deque
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Iterator, Sequence

from .errors import (
    CycleDetected,
    NoUniqueMinimum,
    NotComparable,
    NotGraded,
    NotTransitivelyReduced,
    PosetError,
)

Chain = tuple[int, ...]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """An immutable graded poset with a unique minimum.

    Build instances with :func:`build_poset`; the constructor assumes the
    data has already been validated.
    """

    def __init__(self, n, covers, rank, min_element, names=None, keys=None):
        self.n = n
        self.covers = tuple(sorted(covers))
        self.rank = tuple(rank)
        self.min_element = min_element
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(n))
        # optional combinatorial object behind each id (partition, forest, ...)
        self.keys = tuple(keys) if keys is not None else None
        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            up[a].append(b)
            down[b].append(a)
        self.upper_covers = tuple(tuple(sorted(u)) for u in up)
        self.lower_covers = tuple(tuple(sorted(d)) for d in down)
        self._mobius_rows: dict[int, dict[int, int]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Poset(n={self.n}, rank={self.max_rank}, covers={len(self.covers)})"

    def __len__(self):
        return self.n

    @cached_property
    def max_rank(self) -> int:
        return max(self.rank)

    @cached_property
    def by_rank(self) -> tuple[tuple[int, ...], ...]:
        levels: list[list[int]] = [[] for _ in range(self.max_rank + 1)]
        for x in range(self.n):
            levels[self.rank[x]].append(x)
        return tuple(tuple(level) for level in levels)

    @cached_property
    def order(self) -> tuple[int, ...]:
        """Elements sorted by (rank, id): a linear extension."""
        return tuple(sorted(range(self.n), key=lambda x: (self.rank[x], x)))

    @cached_property
    def down_sets(self) -> tuple[int, ...]:
        """Bitmask of the principal order ideal of each element."""
        down = [0] * self.n
        for x in self.order:
            mask = 1 << x
            for z in self.lower_covers[x]:
                mask |= down[z]
            down[x] = mask
        return tuple(down)

    @cached_property
    def up_sets(self) -> tuple[int, ...]:
        up = [0] * self.n
        for x in reversed(self.order):
            mask = 1 << x
            for z in self.upper_covers[x]:
                mask |= up[z]
            up[x] = mask
        return tuple(up)

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self.upper_covers[x])

    @property
    def maximum(self) -> int | None:
        tops = self.maximal_elements
        return tops[0] if len(tops) == 1 else None

    def leq(self, x: int, y: int) -> bool:
        return bool(self.down_sets[y] >> x & 1)

    def interval_mask(self, x: int, y: int) -> int:
        return self.up_sets[x] & self.down_sets[y]

    def name_of(self, x: int) -> str:
        return self.names[x]

    def index_of(self, name: str) -> int:
        return self._name_index[name]

    def id_of_key(self, key: Hashable) -> int:
        return self._key_index[key]

    @cached_property
    def _name_index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    @cached_property
    def _key_index(self) -> dict:
        if self.keys is None:
            raise PosetError("poset carries no element keys")
        return {k: i for i, k in enumerate(self.keys)}


def build_poset(covers: Iterable[Sequence[int]], n: int, names=None, keys=None) -> Poset:
    """Validate a cover relation on ``range(n)`` and return a :class:`Poset`.

    Raises CycleDetected, NoUniqueMinimum, NotTransitivelyReduced or
    NotGraded, checked in that order.
    """
    if n < 1:
        raise PosetError("a poset needs at least one element")
    pairs = set()
    for pair in covers:
        a, b = int(pair[0]), int(pair[1])
        if not (0 <= a < n and 0 <= b < n):
            raise PosetError(f"cover ({a},{b}) references an id outside [0,{n})")
        if a == b:
            raise CycleDetected(f"self-loop at {a}")
        pairs.add((a, b))

    up = defaultdict(list)
    indeg = [0] * n
    for a, b in pairs:
        up[a].append(b)
        indeg[b] += 1

    # Kahn's algorithm doubles as cycle detection and longest-path layering
    minima = [x for x in range(n) if indeg[x] == 0]
    remaining = indeg[:]
    queue = deque(minima)
    topo = []
    while queue:
        x = queue.popleft()
        topo.append(x)
        for y in up[x]:
            remaining[y] -= 1
            if remaining[y] == 0:
                queue.append(y)
    if len(topo) != n:
        raise CycleDetected("cover relation contains a directed cycle")
    if len(minima) != 1:
        raise NoUniqueMinimum(f"found {len(minima)} minimal elements")

    reach = [0] * n
    for x in reversed(topo):
        mask = 1 << x
        for y in up[x]:
            mask |= reach[y]
        reach[x] = mask
    for a, b in sorted(pairs):
        for c in up[a]:
            if c != b and reach[c] >> b & 1:
                raise NotTransitivelyReduced(f"cover ({a},{b}) is implied via {c}")

    rank = [0] * n
    for x in topo:
        for y in up[x]:
            rank[y] = max(rank[y], rank[x] + 1)
    for a, b in sorted(pairs):
        if rank[b] != rank[a] + 1:
            raise NotGraded(f"cover ({a},{b}) jumps from rank {rank[a]} to {rank[b]}")

    if names is not None:
        if isinstance(names, dict):
            names = [str(names.get(i, names.get(str(i), i))) for i in range(n)]
        if len(names) != n:
            raise PosetError("names must have one entry per element")
    return Poset(n, pairs, rank, minima[0], names, keys)


# Möbius function and Whitney numbers

def mobius_row(P: Poset, x: int) -> dict[int, int]:
    """All values mu(x, y) for y >= x, computed once and cached on ``P``."""
    row = P._mobius_rows.get(x)
    if row is not None:
        return row
    row = {x: 1}
    up_x = P.up_sets[x]
    for y in P.order:
        if y == x or not up_x >> y & 1:
            continue
        total = 0
        for z in iter_bits(up_x & P.down_sets[y] & ~(1 << y)):
            total += row[z]
        row[y] = -total
    with P._lock:
        P._mobius_rows.setdefault(x, row)
    return row


def mobius(P: Poset, x: int, y: int) -> int:
    if not P.leq(x, y):
        raise NotComparable(f"{P.names[x]} is not below {P.names[y]}")
    return mobius_row(P, x)[y]


def whitney_first(P: Poset) -> tuple[int, ...]:
    row = mobius_row(P, P.min_element)
    w = [0] * (P.max_rank + 1)
    for x, value in row.items():
        w[P.rank[x]] += value
    return tuple(w)


def whitney_second(P: Poset) -> tuple[int, ...]:
    return tuple(len(level) for level in P.by_rank)


def _pad(v: Sequence[int], length: int) -> list[int]:
    return list(v) + [0] * (length - len(v))


def is_whitney_dual_pair(P: Poset, Q: Poset) -> bool:
    """True when the first and second kind Whitney numbers swap (in absolute value)."""
    wp, Wp = whitney_first(P), whitney_second(P)
    wq, Wq = whitney_first(Q), whitney_second(Q)
    m = max(len(wp), len(wq))
    wp, Wp, wq, Wq = (_pad(v, m) for v in (wp, Wp, wq, Wq))
    return all(abs(a) == b for a, b in zip(wp, Wq)) and all(abs(a) == b for a, b in zip(wq, Wp))


def is_eulerian(P: Poset) -> bool:
    if P.maximum is None:
        return False
    for x in range(P.n):
        for y, value in mobius_row(P, x).items():
            if value != (-1) ** (P.rank[y] - P.rank[x]):
                return False
    return True


# chains

def saturated_chains(P: Poset, x: int, y: int) -> list[Chain]:
    """Maximal chains of [x, y] in lexicographic order of element ids."""
    if not P.leq(x, y):
        raise NotComparable(f"{P.names[x]} is not below {P.names[y]}")
    below_y = P.down_sets[y]
    out: list[Chain] = []

    def walk(chain: list[int]) -> None:
        top = chain[-1]
        if top == y:
            out.append(tuple(chain))
            return
        for z in P.upper_covers[top]:
            if below_y >> z & 1:
                chain.append(z)
                walk(chain)
                chain.pop()

    walk([x])
    return out


def chains_from(P: Poset, start: Chain) -> Iterator[Chain]:
    """Every saturated chain that extends ``start`` upward (``start`` included),
    in depth-first lexicographic order."""
    stack = [tuple(start)]
    while stack:
        c = stack.pop()
        yield c
        for z in reversed(P.upper_covers[c[-1]]):
            stack.append(c + (z,))


def count_saturated_chains(P: Poset, x: int) -> dict[int, int]:
    """Number of saturated chains from ``x`` to each y >= x."""
    counts = {x: 1}
    for y in P.order:
        if y != x and P.up_sets[x] >> y & 1:
            counts[y] = sum(counts.get(z, 0) for z in P.lower_covers[y])
    return counts


def maximal_chains(P: Poset) -> list[Chain]:
    """Saturated chains from the minimum to every maximal element."""
    out = []
    for m in P.maximal_elements:
        out.extend(saturated_chains(P, P.min_element, m))
    return sorted(out)


# isomorphism: colour refinement then backtracking

def _refine(colors: list[int], up, down) -> list[int]:
    n_classes = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in up[v])), tuple(sorted(colors[d] for d in down[v])))
            for v in range(len(colors))
        ]
        relabel = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [relabel[s] for s in sigs]
        if len(relabel) == n_classes:
            return new
        colors, n_classes = new, len(relabel)


def find_isomorphism(P: Poset, Q: Poset) -> dict[int, int] | None:
    """Return a cover-preserving bijection P -> Q, or None."""
    n = P.n
    if n != Q.n or len(P.covers) != len(Q.covers) or sorted(P.rank) != sorted(Q.rank):
        return None
    up = [P.upper_covers[v] for v in range(n)] + [tuple(u + n for u in Q.upper_covers[v]) for v in range(n)]
    down = [P.lower_covers[v] for v in range(n)] + [tuple(d + n for d in Q.lower_covers[v]) for v in range(n)]
    q_covers = set(Q.covers)

    def balanced(colors):
        count: dict[int, int] = defaultdict(int)
        for v in range(n):
            count[colors[v]] += 1
        for v in range(n, 2 * n):
            count[colors[v]] -= 1
        return not any(count.values())

    def search(colors):
        if not balanced(colors):
            return None
        classes: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(colors):
            classes[c].append(v)
        open_classes = [members for members in classes.values() if len(members) > 2]
        if not open_classes:
            mapping = {}
            for members in classes.values():
                a, b = members
                mapping[a] = b - n
            if all((mapping[a], mapping[b]) in q_covers for a, b in P.covers):
                return mapping
            return None
        members = min(open_classes, key=len)
        v = members[0]
        fresh = max(colors) + 1
        for w in members:
            if w < n:
                continue
            trial = list(colors)
            trial[v] = trial[w] = fresh
            found = search(_refine(trial, up, down))
            if found is not None:
                return found
        return None

    start = [P.rank[v] for v in range(n)] + [Q.rank[v] for v in range(n)]
    return search(_refine(start, up, down))


def are_isomorphic(P: Poset, Q: Poset) -> bool:
    return find_isomorphism(P, Q) is not None


# structural probes

def is_bowtie_free(P: Poset) -> bool:
    seen: dict[tuple[int, int], int] = {}
    for a in range(P.n):
        for pair in combinations(P.lower_covers[a], 2):
            if pair in seen:
                return False
            seen[pair] = a
    return True


def join(P: Poset, x: int, y: int) -> int | None:
    """Least upper bound of x and y, or None when it does not exist."""
    common = P.up_sets[x] & P.up_sets[y]
    for z in iter_bits(common):
        if P.up_sets[z] == common:
            return z
    return None


def is_lattice(P: Poset) -> bool:
    if P.maximum is None:
        return False
    return all(join(P, x, y) is not None for x, y in combinations(range(P.n), 2))


def interval(P: Poset, x: int, y: int) -> Poset:
    """The closed interval [x, y] as a poset of its own (ids renumbered by rank)."""
    members = [z for z in P.order if P.interval_mask(x, y) >> z & 1]
    if not members:
        raise NotComparable(f"{P.names[x]} is not below {P.names[y]}")
    index = {z: i for i, z in enumerate(members)}
    covers = [(index[a], index[b]) for a, b in P.covers if a in index and b in index]
    keys = [P.keys[z] for z in members] if P.keys is not None else None
    return build_poset(covers, len(members), [P.names[z] for z in members], keys)
