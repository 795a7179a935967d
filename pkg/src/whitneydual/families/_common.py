from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable

from ..errors import SizeLimit
from ..poset import Poset, build_poset

DEFAULT_CAPS = {"pi": 7, "nc": 7, "piw": 5, "sf": 5, "isf": 6, "ncdyck": 6}


def check_cap(family: str, n: int, cap: int | None) -> None:
    limit = DEFAULT_CAPS[family] if cap is None else cap
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > limit:
        raise SizeLimit(f"{family} with n={n} exceeds the size cap {limit}")


def num(i: int) -> str:
    # multi-digit vertex names are parenthesised so names stay unambiguous
    return str(i) if i < 10 else f"({i})"


def block_name(block: Iterable[int]) -> str:
    return "".join(num(i) for i in block)


def generate(bottom: Hashable, covers: Callable[[Hashable], Iterable[tuple[Hashable, object]]],
             namer: Callable[[Hashable], str]) -> tuple[Poset, dict]:
    """Breadth-first closure of ``bottom`` under ``covers``.

    ``covers(key)`` yields (upper_key, label). Ids are assigned by
    (rank, key) so the result is deterministic.
    """
    depth = {bottom: 0}
    edges: dict[tuple, object] = {}
    queue = deque([bottom])
    while queue:
        x = queue.popleft()
        for y, label in covers(x):
            if y not in depth:
                depth[y] = depth[x] + 1
                queue.append(y)
            edges[(x, y)] = label
    keys = sorted(depth, key=lambda k: (depth[k], k))
    index = {k: i for i, k in enumerate(keys)}
    cover_ids = [(index[a], index[b]) for a, b in edges]
    P = build_poset(cover_ids, len(keys), [namer(k) for k in keys], keys)
    labels = {(index[a], index[b]): lab for (a, b), lab in edges.items()}
    return P, labels
