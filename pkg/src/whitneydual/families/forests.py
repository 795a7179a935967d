"""Rooted spanning forests (SF_n) and increasing spanning forests (ISF_n)."""

from __future__ import annotations

from collections import defaultdict, deque
from functools import lru_cache
from itertools import combinations

from ..labeling import EdgeLabeling, LexOrder
from ..poset import Poset
from ._common import check_cap, generate, num

Edge = tuple[int, int]
# a rooted forest on [n]: (sorted edges, sorted roots)
Forest = tuple[tuple[Edge, ...], tuple[int, ...]]


def edgeless(n: int) -> Forest:
    return (), tuple(range(1, n + 1))


def _adjacency(edges) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def parents(edges, root: int) -> dict[int, int | None]:
    """Parent map of the tree containing ``root``, root mapped to None."""
    adj = _adjacency(edges)
    parent: dict[int, int | None] = {root: None}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                queue.append(w)
    return parent


def tree_cost(edges, root: int) -> int:
    """Sum of the distances from every vertex of the tree to its root."""
    adj = _adjacency(edges)
    depth = {root: 0}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in depth:
                depth[w] = depth[v] + 1
                queue.append(w)
    return sum(depth.values())


def tree_descents(edges, root: int) -> int:
    """Number of vertices whose parent carries a larger label."""
    return sum(1 for v, p in parents(edges, root).items() if p is not None and p > v)


def forest_name(F: Forest) -> str:
    edges, roots = F
    e = ",".join(num(a) + num(b) for a, b in edges)
    r = ",".join(num(v) for v in roots)
    return f"{{{e}}}r{{{r}}}"


def join_roots(F: Forest, keep: int, absorb: int) -> Forest:
    edges, roots = F
    edge = (min(keep, absorb), max(keep, absorb))
    return tuple(sorted(edges + (edge,))), tuple(r for r in roots if r != absorb)


def sf_label(F: Forest, keep: int, absorb: int) -> tuple[int, int, int]:
    """Label of the cover that attaches the tree rooted at ``absorb`` below ``keep``:
    (-cost of the absorbed tree, new root, absorbed root)."""
    return (-tree_cost(F[0], absorb), keep, absorb)


def sf_covers(F: Forest):
    for r1, r2 in combinations(F[1], 2):
        for keep, absorb in ((r1, r2), (r2, r1)):
            yield join_roots(F, keep, absorb), sf_label(F, keep, absorb)


@lru_cache(maxsize=None)
def rooted_forest_poset(n: int, cap: int | None = None) -> tuple[Poset, EdgeLabeling]:
    """SF_n: F1 <= F2 iff E(F1) is in E(F2) and R(F2) is in R(F1); lex order on Z^3 labels."""
    check_cap("sf", n, cap)
    P, labels = generate(edgeless(n), sf_covers, forest_name)
    return P, EdgeLabeling(P, labels, LexOrder(), name="lambda_sf")


# increasing spanning forests: a forest is its sorted edge tuple; roots are block minima

def _components(n: int, edges) -> list[list[int]]:
    adj = _adjacency(edges)
    seen: set[int] = set()
    comps = []
    for v in range(1, n + 1):
        if v in seen:
            continue
        comp, queue = [], deque([v])
        seen.add(v)
        while queue:
            a = queue.popleft()
            comp.append(a)
            for b in adj[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        comps.append(sorted(comp))
    return comps


def isf_name(edges) -> str:
    return "{" + ",".join(num(a) + num(b) for a, b in edges) + "}"


@lru_cache(maxsize=None)
def increasing_forest_poset(n: int, cap: int | None = None) -> tuple[Poset, EdgeLabeling]:
    """ISF_n, covers join two roots; each cover is labeled by its new edge."""
    check_cap("isf", n, cap)

    def covers(edges):
        roots = [c[0] for c in _components(n, edges)]
        for r1, r2 in combinations(roots, 2):
            yield tuple(sorted(edges + ((r1, r2),))), (r1, r2)

    P, labels = generate((), covers, isf_name)
    return P, EdgeLabeling(P, labels, LexOrder(), name="isf_star")

