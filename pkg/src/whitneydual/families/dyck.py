"""Labeled Dyck paths, the poset NCDyck_n and parking-function helpers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from ..errors import CrossingLabelSets, NonDisjoint, NotDecreasing
from ..poset import Poset
from ._common import check_cap, generate, num
from .partitions import is_noncrossing


@dataclass(frozen=True, order=True)
class LabeledDyckPath:
    """A Dyck path whose i-th column carries ``exponents[i]`` north steps and
    is labeled ``labels[i]``."""

    labels: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.exponents):
            raise ValueError("labels and exponents differ in length")
        if list(self.labels) != sorted(set(self.labels)):
            raise ValueError("labels must be strictly increasing")

    @classmethod
    def singleton(cls, a: int) -> "LabeledDyckPath":
        return cls((a,), (0,))

    @classmethod
    def from_key(cls, key) -> "LabeledDyckPath":
        return cls(tuple(a for a, _ in key), tuple(e for _, e in key))

    @property
    def key(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.labels, self.exponents))

    def is_ballot(self) -> bool:
        """North-step prefix sums stay on or above the diagonal and end at size - 1."""
        total = 0
        for j, e in enumerate(self.exponents[:-1], start=1):
            total += e
            if total < j:
                return False
        return sum(self.exponents) == len(self.labels) - 1

    def __str__(self):
        return " ".join(f"{num(a)}^{e}" for a, e in self.key)


def dyck_merge(d1: LabeledDyckPath, d2: LabeledDyckPath) -> LabeledDyckPath:
    """Merge two paths: the larger-minimum path is inserted after the anchor
    b = max{b in labels(d1) : b < min labels(d2)}, which gains a north step."""
    if set(d1.labels) & set(d2.labels):
        raise NonDisjoint("label sets overlap")
    if d2.labels[0] < d1.labels[0]:
        d1, d2 = d2, d1
    anchor = max(b for b in d1.labels if b < d2.labels[0])
    later = [b for b in d1.labels if b > d2.labels[0]]
    if later and later[0] < d2.labels[-1]:
        raise CrossingLabelSets(f"{d1} and {d2} have crossing label sets")
    exps = dict(d1.key)
    exps.update(d2.key)
    exps[anchor] += 1
    labels = tuple(sorted(exps))
    return LabeledDyckPath(labels, tuple(exps[a] for a in labels))


NCDyckKey = tuple[tuple[tuple[int, int], ...], ...]


def ncdyck_name(x: NCDyckKey) -> str:
    return "/".join(str(LabeledDyckPath.from_key(c)) for c in x)


def ncdyck_covers(x: NCDyckKey):
    for i, j in combinations(range(len(x)), 2):
        a, b = LabeledDyckPath.from_key(x[i]), LabeledDyckPath.from_key(x[j])
        try:
            merged = dyck_merge(a, b)
        except CrossingLabelSets:
            continue
        rest = [c for k, c in enumerate(x) if k not in (i, j)]
        y = tuple(sorted(rest + [merged.key]))
        if is_noncrossing(tuple(tuple(l for l, _ in c) for c in y)):
            yield y, None


@lru_cache(maxsize=None)
def ncdyck_poset(n: int, cap: int | None = None) -> Poset:
    """NCDyck_n: noncrossing collections of labeled Dyck paths ordered by merging."""
    check_cap("ncdyck", n, cap)
    bottom = tuple(LabeledDyckPath.singleton(a).key for a in range(1, n + 1))
    return generate(bottom, ncdyck_covers, ncdyck_name)[0]


def is_parking_function(w: Sequence[int]) -> bool:
    return all(1 <= p <= j for j, p in enumerate(sorted(w), start=1))


def decreasing_pf_to_dyck(w: Sequence[int]) -> LabeledDyckPath:
    """Weakly decreasing parking function of length n-1 to a Dyck path on [n]:
    label i gets as many north steps as i occurs in w."""
    w = list(w)
    if any(a < b for a, b in zip(w, w[1:])):
        raise NotDecreasing(f"{w} is not weakly decreasing")
    if not is_parking_function(w):
        raise ValueError(f"{w} is not a parking function")
    n = len(w) + 1
    labels = tuple(range(1, n + 1))
    return LabeledDyckPath(labels, tuple(w.count(i) for i in labels))
