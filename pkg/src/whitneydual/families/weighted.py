"""Weighted partitions, the labelings lambda_E and lambda_C, and the maps
between chains of weighted partitions and rooted forests."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..labeling import ChainEdgeLabeling, EdgeLabeling, GammaOrder, LexOrder
from ..poset import Poset
from ._common import block_name, check_cap, generate
from .forests import Forest, edgeless, join_roots, parents, sf_label

WeightedPartition = tuple[tuple[tuple[int, ...], int], ...]


def weighted_name(x: WeightedPartition) -> str:
    return "/".join(f"{block_name(b)}^{w}" for b, w in x)


def weighted_covers(x: WeightedPartition):
    """Upper covers of ``x`` as (y, (min A, min B, u))."""
    for i, j in combinations(range(len(x)), 2):
        (a, wa), (b, wb) = x[i], x[j]
        rest = [blk for k, blk in enumerate(x) if k not in (i, j)]
        for u in (0, 1):
            merged = (tuple(sorted(a + b)), wa + wb + u)
            yield tuple(sorted(rest + [merged])), (a[0], b[0], u)


def _bottom(n: int) -> WeightedPartition:
    return tuple(((i,), 0) for i in range(1, n + 1))


@lru_cache(maxsize=None)
def _weighted(n: int, cap: int | None):
    check_cap("piw", n, cap)
    return generate(_bottom(n), weighted_covers, weighted_name)


def weighted_partition_poset(n: int, cap: int | None = None) -> Poset:
    return _weighted(n, cap)[0]


@lru_cache(maxsize=None)
def lambda_E(n: int, cap: int | None = None) -> EdgeLabeling:
    P, labels = _weighted(n, cap)
    return EdgeLabeling(P, labels, GammaOrder(n), name="lambda_e")


def merge_step(x: WeightedPartition, y: WeightedPartition):
    """The two merged blocks of a cover x < y and the weight increment u."""
    gone = sorted(set(x) - set(y))
    (new,) = set(y) - set(x)
    (a, wa), (b, wb) = gone
    return a, b, new[1] - wa - wb


def forest_step(F: Forest, x: WeightedPartition, y: WeightedPartition) -> tuple[Forest, int, int]:
    """Apply one step of the forest map. Returns (new forest, kept root, absorbed root)."""
    a, b, u = merge_step(x, y)
    roots = set(F[1])
    (ra,) = roots.intersection(a)
    (rb,) = roots.intersection(b)
    lo, hi = min(ra, rb), max(ra, rb)
    keep, absorb = (lo, hi) if u == 0 else (hi, lo)
    return join_roots(F, keep, absorb), keep, absorb


def forest_map(chain: Sequence[WeightedPartition]) -> Forest:
    """Rooted forest attached to a saturated chain from the minimum (given by keys)."""
    n = sum(len(b) for b, _ in chain[0])
    F = edgeless(n)
    for x, y in zip(chain, chain[1:]):
        F = forest_step(F, x, y)[0]
    return F


def pi_of_forest(F: Forest) -> WeightedPartition:
    """Weighted partition of the trees of F, each weighted by its descent count."""
    edges, roots = F
    blocks = []
    for r in roots:
        par = parents(edges, r)
        descents = sum(1 for v, p in par.items() if p is not None and p > v)
        blocks.append((tuple(sorted(par)), descents))
    return tuple(sorted(blocks))


class LambdaC:
    """Prefix function behind lambda_C; picklable so verifiers can fan out."""

    def __init__(self, n: int, cap: int | None):
        self.n, self.cap = n, cap
        self._forests: dict[tuple[int, ...], Forest] = {}

    @property
    def poset(self) -> Poset:
        return weighted_partition_poset(self.n, self.cap)

    def forest(self, prefix: tuple[int, ...]) -> Forest:
        F = self._forests.get(prefix)
        if F is None:
            if len(prefix) == 1:
                F = edgeless(self.n)
            else:
                keys = self.poset.keys
                F = forest_step(self.forest(prefix[:-1]), keys[prefix[-2]], keys[prefix[-1]])[0]
            self._forests[prefix] = F
        return F

    def __call__(self, prefix: tuple[int, ...]):
        keys = self.poset.keys
        below = self.forest(prefix[:-1])
        _, keep, absorb = forest_step(below, keys[prefix[-2]], keys[prefix[-1]])
        return sf_label(below, keep, absorb)

    def __getstate__(self):
        return {"n": self.n, "cap": self.cap, "_forests": {}}


@lru_cache(maxsize=None)
def lambda_C(n: int, cap: int | None = None) -> ChainEdgeLabeling:
    P = weighted_partition_poset(n, cap)
    return ChainEdgeLabeling(P, LambdaC(n, cap), LexOrder(), name="lambda_c")
