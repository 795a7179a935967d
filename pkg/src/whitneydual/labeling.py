"""Label orders, edge and chain-edge labelings, quadratic exchanges and the
verifiers for every labeling axiom used to build Whitney duals."""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import LabelingError, MissingLabel, SizeLimit, SwitchingViolation
from .poset import Chain, Poset, chains_from, iter_bits, saturated_chains

Label = Any  # tuple of ints, or a plain int
Word = tuple


# label orders

class LabelOrder:
    mode = "abstract"

    def lt(self, a, b) -> bool:
        raise NotImplementedError

    def to_json(self) -> dict:
        return {"mode": self.mode}

    def __eq__(self, other):
        return type(self) is type(other) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))


class LexOrder(LabelOrder):
    """Python's native order: lexicographic on tuples, numeric on ints."""

    mode = "lex"

    def lt(self, a, b):
        return a < b


class GammaOrder(LabelOrder):
    """Ordinal sum of the posets Gamma_1, ..., Gamma_n on labels (a, b, u).

    Labels with different first coordinates compare by it; with equal first
    coordinates they compare componentwise on (b, u) and may be incomparable.
    """

    mode = "ordinal_sum_gamma"

    def __init__(self, n: int):
        self.n = n

    def lt(self, x, y):
        if x[0] != y[0]:
            return x[0] < y[0]
        return x != y and x[1] <= y[1] and x[2] <= y[2]

    def to_json(self):
        return {"mode": self.mode, "n": self.n}


class CustomOrder(LabelOrder):
    """A strict partial order given by generating relations a < b."""

    mode = "custom"

    def __init__(self, relations: Iterable[tuple[Label, Label]]):
        rel = {(_freeze(a), _freeze(b)) for a, b in relations}
        # transitive closure
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        if any(a == b for a, b in rel):
            raise LabelingError("custom label order is not irreflexive")
        self.relations = frozenset(rel)
        self._generators = sorted({(_freeze(a), _freeze(b)) for a, b in relations})

    def lt(self, a, b):
        return (a, b) in self.relations

    def to_json(self):
        return {"mode": self.mode, "less": [[list(a), list(b)] for a, b in self._generators]}


def _freeze(label):
    if isinstance(label, list):
        return tuple(label)
    return label


def order_from_json(data: dict) -> LabelOrder:
    mode = data.get("mode", "lex")
    if mode == "lex":
        return LexOrder()
    if mode == "ordinal_sum_gamma":
        return GammaOrder(int(data["n"]))
    if mode == "custom":
        return CustomOrder((tuple(a), tuple(b)) for a, b in data["less"])
    raise LabelingError(f"unknown label order mode {mode!r}")


# labelings

class EdgeLabeling:
    """A label on every cover pair of ``poset``."""

    is_chain_edge = False

    def __init__(self, poset: Poset, labels: dict, order: LabelOrder, name: str = "edge"):
        self.poset = poset
        self.labels = dict(labels)
        self.order = order
        self.name = name
        missing = [e for e in poset.covers if e not in self.labels]
        if missing:
            raise MissingLabel(f"no label on cover {missing[0]}")

    def edge(self, a: int, b: int):
        try:
            return self.labels[(a, b)]
        except KeyError:
            raise MissingLabel(f"no label on ({a},{b})") from None

    def label(self, prefix: Chain):
        """Label of the last step of ``prefix``."""
        return self.edge(prefix[-2], prefix[-1])


class ChainEdgeLabeling:
    """Labels that depend on the whole chain from the minimum.

    ``fn(prefix)`` returns the label of the step ``prefix[-2] -> prefix[-1]``
    where ``prefix`` starts at the minimum. Because the label is a function of
    the prefix only, two chains that share their bottom d steps automatically
    get the same labels there.
    """

    is_chain_edge = True

    def __init__(self, poset: Poset, fn: Callable[[Chain], Label], order: LabelOrder, name: str = "chain_edge"):
        self.poset = poset
        self.fn = fn
        self.order = order
        self.name = name
        self._memo: dict[Chain, Label] = {}

    def label(self, prefix: Chain):
        value = self._memo.get(prefix)
        if value is None:
            value = self._memo[prefix] = self.fn(prefix)
        return value

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_memo"] = {}
        return state


Labeling = EdgeLabeling | ChainEdgeLabeling


def word_of_labels(lam: Labeling, c: Chain) -> Word:
    c = tuple(c)
    if lam.is_chain_edge and c[0] != lam.poset.min_element:
        raise LabelingError("chain-edge words need a chain starting at the minimum")
    return tuple(lam.label(c[: i + 1]) for i in range(1, len(c)))


class WordClass(Enum):
    INCREASING = "Increasing"
    ASCENT_FREE = "AscentFree"
    MIXED = "Mixed"


def is_increasing(w: Sequence, order: LabelOrder) -> bool:
    return all(order.lt(w[i], w[i + 1]) for i in range(len(w) - 1))


def is_ascent_free(w: Sequence, order: LabelOrder) -> bool:
    return not any(order.lt(w[i], w[i + 1]) for i in range(len(w) - 1))


def classify_word(w: Sequence, order: LabelOrder) -> WordClass:
    """Increasing wins ties (words of length <= 1 are both)."""
    if is_increasing(w, order):
        return WordClass.INCREASING
    if is_ascent_free(w, order):
        return WordClass.ASCENT_FREE
    return WordClass.MIXED


def descent_set(lam: Labeling, c: Chain) -> frozenset[int]:
    w = word_of_labels(lam, c)
    return frozenset(i for i in range(1, len(w)) if not lam.order.lt(w[i - 1], w[i]))


def ascent_set(lam: Labeling, c: Chain) -> frozenset[int]:
    w = word_of_labels(lam, c)
    return frozenset(i for i in range(1, len(w)) if lam.order.lt(w[i - 1], w[i]))


# reports

@dataclass
class Report:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"check": self.name, "status": self.status}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.details:
            out["details"] = self.details
        return out

    def line(self) -> str:
        text = f"{self.name}: {self.status}"
        if self.counterexample:
            text += f" ({self.counterexample.get('reason', '')})".replace(" ()", "")
        return text


def _names(P: Poset, c: Iterable[int]) -> list[str]:
    return [P.names[z] for z in c]


def _fmt_word(w) -> list:
    return [list(x) if isinstance(x, tuple) else x for x in w]


# exchanges on chains from the minimum

class ExchangeSystem:
    """Words and quadratic exchanges on saturated chains from the minimum.

    One instance is cached per labeling (see :func:`exchange_system`).
    """

    def __init__(self, lam: Labeling):
        self.lam = lam
        self.P = lam.poset
        self.order = lam.order
        self._words: dict[Chain, Word] = {(self.P.min_element,): ()}
        self._exchange: dict[tuple[Chain, int], Chain] = {}

    def word(self, c: Chain) -> Word:
        w = self._words.get(c)
        if w is None:
            w = self.word(c[:-1]) + (self.lam.label(c),)
            self._words[c] = w
        return w

    def has_ascent(self, c: Chain, i: int) -> bool:
        w = self.word(c)
        return self.order.lt(w[i - 1], w[i])

    def partners(self, c: Chain, i: int) -> list[Chain]:
        """Chains differing from ``c`` only at rank i whose word is the word of
        ``c`` with letters i, i+1 transposed."""
        P = self.P
        w = self.word(c)
        target = w[: i - 1] + (w[i], w[i - 1]) + w[i + 1:]
        below, here, above = c[i - 1], c[i], c[i + 1]
        out = []
        for z in P.upper_covers[below]:
            if z != here and above in P.upper_covers[z]:
                d = c[:i] + (z,) + c[i + 1:]
                if self.word(d) == target:
                    out.append(d)
        return out

    def exchange(self, c: Chain, i: int) -> Chain:
        """U_i(c)."""
        if not 1 <= i < len(c) - 1:
            raise LabelingError(f"rank {i} is not interior to a chain of length {len(c) - 1}")
        key = (c, i)
        hit = self._exchange.get(key)
        if hit is not None:
            return hit
        if not self.has_ascent(c, i):
            result = c
        else:
            found = self.partners(c, i)
            if len(found) != 1:
                raise SwitchingViolation(
                    f"chain {_names(self.P, c)} has {len(found)} exchange partners at rank {i}"
                )
            result = found[0]
        self._exchange[key] = result
        return result

    def normal_form(self, c: Chain) -> Chain:
        """Apply leftmost exchanges until the chain is ascent-free."""
        while True:
            w = self.word(c)
            for i in range(1, len(w)):
                if self.order.lt(w[i - 1], w[i]):
                    c = self.exchange(c, i)
                    break
            else:
                return c


def exchange_system(lam: Labeling) -> ExchangeSystem:
    sys_ = getattr(lam, "_exchange_system", None)
    if sys_ is None:
        sys_ = ExchangeSystem(lam)
        lam._exchange_system = sys_
    return sys_


def quadratic_exchange(lam: Labeling, c: Chain, i: int) -> Chain:
    """U_i(c) for a saturated chain ``c`` from the minimum."""
    return exchange_system(lam).exchange(tuple(c), i)


def all_chains_from_min(P: Poset, cap: int | None = None) -> list[Chain]:
    """Every saturated chain starting at the minimum, sorted by (length, ids)."""
    out = []
    for c in chains_from(P, (P.min_element,)):
        out.append(c)
        if cap is not None and len(out) > cap:
            raise SizeLimit(f"more than {cap} saturated chains from the minimum")
    out.sort(key=lambda c: (len(c), c))
    return out


# interval scans

def _roots(P: Poset, lam: Labeling) -> list[Chain]:
    """Bottoms of the intervals to inspect: a bare element for edge labelings,
    every chain from the minimum for chain-edge labelings (rooted intervals)."""
    if lam.is_chain_edge:
        return all_chains_from_min(P)
    return [(x,) for x in range(P.n)]


def _extensions(P: Poset, lam: Labeling, root: Chain) -> dict[int, list[tuple[Chain, Word]]]:
    """Group the saturated chains above the top of ``root`` by endpoint, with
    their words computed through ``root``."""
    groups: dict[int, list[tuple[Chain, Word]]] = defaultdict(list)
    base = len(root) - 1
    stack: list[tuple[Chain, Word]] = [(root, ())]
    while stack:
        c, w = stack.pop()
        groups[c[-1]].append((c[base:], w))
        for z in reversed(P.upper_covers[c[-1]]):
            d = c + (z,)
            stack.append((d, w + (lam.label(d),)))
    return groups


def _scan_root(args) -> dict[str, dict | None]:
    P, lam, root, checks = args
    order = lam.order
    found: dict[str, dict | None] = {name: None for name in checks}
    groups = _extensions(P, lam, root)
    for y in sorted(groups):
        entries = groups[y]
        pending = [name for name in checks if found[name] is None]
        if not pending:
            break
        for name in pending:
            bad = None
            if name in ("ER", "ER*"):
                pred = is_increasing if name == "ER" else is_ascent_free
                hits = [seg for seg, w in entries if pred(w, order)]
                if len(hits) != 1:
                    kind = "increasing" if name == "ER" else "ascent-free"
                    bad = {"reason": f"{len(hits)} {kind} maximal chains"}
            elif name == "words":
                af = [(seg, w) for seg, w in entries if is_ascent_free(w, order)]
                seen: dict[Word, Chain] = {}
                for seg, w in af:
                    if w in seen:
                        bad = {"reason": "two ascent-free maximal chains share a word",
                               "duplicate": [_names(P, seen[w]), _names(P, seg)]}
                        break
                    seen[w] = seg
            if bad is not None:
                bad["interval"] = [P.names[root[-1]], P.names[y]]
                if lam.is_chain_edge:
                    bad["root"] = _names(P, root)
                bad["chains"] = [_names(P, seg) for seg, _ in entries]
                bad["words"] = [_fmt_word(w) for _, w in entries]
                found[name] = bad
    return found


def _scan(P: Poset, lam: Labeling, checks: tuple[str, ...], jobs: int = 1) -> dict[str, dict | None]:
    roots = _roots(P, lam)
    found: dict[str, dict | None] = {name: None for name in checks}
    tasks = [(P, lam, r, checks) for r in roots]
    if jobs > 1 and len(tasks) >= 256:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_root, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = []
        for t in tasks:
            results.append(_scan_root(t))
            if all(any(r[k] is not None for r in results) for k in checks):
                break
    # merge in root order so the first counterexample is deterministic
    for res in results:
        for name in checks:
            if found[name] is None and res[name] is not None:
                found[name] = res[name]
    return found


def default_jobs() -> int:
    return os.cpu_count() or 1


def _report(name: str, bad: dict | None) -> Report:
    return Report(name, "fail" if bad else "pass", bad)


def verify_ER(P: Poset, lam: Labeling, jobs: int = 1) -> Report:
    """Unique strictly increasing maximal chain in every (rooted) interval."""
    name = "CR" if lam.is_chain_edge else "ER"
    return _report(name, _scan(P, lam, ("ER",), jobs)["ER"])


def verify_ER_star(P: Poset, lam: Labeling, jobs: int = 1) -> Report:
    """Unique ascent-free maximal chain in every interval."""
    return _report("ER*", _scan(P, lam, ("ER*",), jobs)["ER*"])


def verify_word_uniqueness(P: Poset, lam: Labeling, jobs: int = 1) -> Report:
    """Ascent-free maximal chains of each (rooted) interval have distinct words."""
    return _report("unique-words", _scan(P, lam, ("words",), jobs)["words"])


def verify_rank_two_switching(P: Poset, lam: Labeling) -> Report:
    """Every ascent of every chain from the minimum has exactly one partner;
    the partner depends only on the bottom i+2 elements."""
    es = exchange_system(lam)
    for c in all_chains_from_min(P):
        w = es.word(c)
        if lam.is_chain_edge:
            # guard against labeling functions that are not prefix-determined
            fresh = tuple(lam.fn(c[: j + 1]) for j in range(1, len(c)))
            if fresh != w:
                return Report("switching", "fail", {
                    "reason": "labels are not a function of the chain prefix",
                    "chain": _names(P, c)})
        for i in range(1, len(w)):
            if not es.order.lt(w[i - 1], w[i]):
                continue
            found = es.partners(c, i)
            if len(found) != 1:
                return Report("switching", "fail", {
                    "reason": f"{len(found)} exchange partners at rank {i}",
                    "chain": _names(P, c), "word": _fmt_word(w), "rank": i,
                    "partners": [_names(P, d) for d in found]})
            if len(c) > i + 2:
                short = es.partners(c[: i + 2], i)
                if len(short) != 1 or short[0][i] != found[0][i]:
                    return Report("switching", "fail", {
                        "reason": f"exchange at rank {i} depends on labels above rank {i + 1}",
                        "chain": _names(P, c), "rank": i})
    return Report("switching", "pass")


def verify_braid(P: Poset, lam: Labeling) -> Report:
    es = exchange_system(lam)
    order = lam.order
    try:
        for c in all_chains_from_min(P):
            w = es.word(c)
            for i in range(1, len(w) - 1):
                if order.lt(w[i - 1], w[i]) and order.lt(w[i], w[i + 1]):
                    a = es.exchange(es.exchange(es.exchange(c, i), i + 1), i)
                    b = es.exchange(es.exchange(es.exchange(c, i + 1), i), i + 1)
                    if a != b:
                        return Report("braid", "fail", {
                            "reason": f"braid relation fails at rank {i}",
                            "chain": _names(P, c), "word": _fmt_word(w),
                            "results": [_names(P, a), _names(P, b)]})
    except SwitchingViolation as exc:
        return Report("braid", "fail", {"reason": str(exc)})
    return Report("braid", "pass")


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def rooted_components(lam: Labeling, root: Chain, y: int) -> dict[Chain, Chain]:
    """Components of the exchange graph of the rooted interval [top(root), y].

    Chains are returned whole (from the minimum); each maps to the smallest
    chain of its component.
    """
    P = lam.poset
    es = exchange_system(lam)
    z_rank = len(root) - 1
    members = [root[:-1] + seg for seg in saturated_chains(P, root[-1], y)]
    uf = _UnionFind()
    for c in members:
        uf.add(c)
    for c in members:
        for i in range(z_rank + 1, len(c) - 1):
            if es.has_ascent(c, i):
                uf.union(c, es.exchange(c, i))
    return {c: uf.find(c) for c in members}


def verify_cancellative(P: Poset, lam: Labeling, force: bool = False,
                        max_rank: int = 8, max_chains: int = 5000) -> Report:
    """Exhaustive check of the cancellation property over all z < x < y.

    Exponential, so gated by rank and chain count unless ``force`` is set.
    """
    if not force and P.max_rank > max_rank:
        return Report("cancellative", "skipped", {"reason": f"rank {P.max_rank} exceeds {max_rank}"})
    try:
        chains = all_chains_from_min(P, cap=None if force else max_chains)
    except SizeLimit:
        return Report("cancellative", "skipped", {"reason": f"more than {max_chains} chains"})
    if lam.is_chain_edge:
        roots = chains
    else:
        first: dict[int, Chain] = {}
        for c in chains:
            first.setdefault(c[-1], c)
        roots = [first[x] for x in sorted(first)]
    cache: dict[tuple[Chain, int], dict[Chain, Chain]] = {}

    def comps(r, y):
        key = (r, y)
        if key not in cache:
            cache[key] = rooted_components(lam, r, y)
        return cache[key]

    try:
        for r in roots:
            z = r[-1]
            for y in iter_bits(P.up_sets[z]):
                if P.rank[y] - P.rank[z] < 2:
                    continue
                outer = comps(r, y)
                for j in range(len(r), len(r) + P.rank[y] - P.rank[z] - 1):
                    # x = m[j]; group the chains by the piece between z and x
                    seen: dict[tuple[Chain, Chain], Chain] = {}
                    for m in outer:
                        prefix = m[: j + 1]
                        inner = comps(prefix, y)[m]
                        key = (prefix, outer[m])
                        if key in seen and seen[key] != inner:
                            return Report("cancellative", "fail", {
                                "reason": "equivalent extensions of a common chain are not equivalent above it",
                                "interval": [P.names[z], P.names[m[j]], P.names[y]],
                                "prefix": _names(P, prefix)})
                        seen.setdefault(key, inner)
    except SwitchingViolation as exc:
        return Report("cancellative", "fail", {"reason": str(exc)})
    return Report("cancellative", "pass")


# composite verdicts

@dataclass
class Verdict:
    verdict: str  # EW | generalized-EW-only | CW | generalized-CW-only | fail
    reports: list[Report]
    reason: str | None = None

    @property
    def ok(self) -> bool:
        return self.verdict != "fail"

    def __bool__(self):
        return self.ok

    def counterexample(self) -> dict | None:
        for r in self.reports:
            if r.status == "fail":
                return r.counterexample
        return None

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "checks": [r.to_json() for r in self.reports]}
        if self.reason:
            out["reason"] = self.reason
        return out


def _verify_whitney(P: Poset, lam: Labeling, kind: str, jobs: int, force_cancellative: bool) -> Verdict:
    found = _scan(P, lam, ("ER", "words"), jobs)
    er = _report("CR" if lam.is_chain_edge else "ER", found["ER"])
    reports = [er]
    if not er:
        return Verdict("fail", reports, f"{er.name} fails")
    sw = verify_rank_two_switching(P, lam)
    reports.append(sw)
    if not sw:
        return Verdict("fail", reports, "rank-two switching fails")
    words = _report("unique-words", found["words"])
    reports.append(words)
    if words:
        return Verdict(kind, reports)
    braid = verify_braid(P, lam)
    canc = verify_cancellative(P, lam, force=force_cancellative)
    reports += [braid, canc]
    if braid and canc:
        return Verdict(f"generalized-{kind}-only", reports)
    failing = braid if not braid else canc
    return Verdict("fail", reports, f"{failing.name} {failing.status}")


def verify_EW(P: Poset, lam: Labeling, jobs: int = 1, force_cancellative: bool = False) -> Verdict:
    if lam.is_chain_edge:
        return Verdict("fail", [], "EW requires an edge labeling")
    return _verify_whitney(P, lam, "EW", jobs, force_cancellative)


def verify_CW(P: Poset, lam: Labeling, jobs: int = 1, force_cancellative: bool = False) -> Verdict:
    return _verify_whitney(P, lam, "CW", jobs, force_cancellative)


def verify_whitney(P: Poset, lam: Labeling, jobs: int = 1, force_cancellative: bool = False) -> Verdict:
    """EW verdict for edge labelings, CW verdict for chain-edge labelings."""
    if lam.is_chain_edge:
        return verify_CW(P, lam, jobs, force_cancellative)
    return verify_EW(P, lam, jobs, force_cancellative)


def constant_labeling(P: Poset, value=(0,)) -> EdgeLabeling:
    return EdgeLabeling(P, {e: value for e in P.covers}, LexOrder(), name="constant")


def labeling_from_json(P: Poset, data: dict) -> EdgeLabeling:
    raw = data.get("labels")
    if raw is None:
        raise MissingLabel("input has no \"labels\" object")
    labels = {}
    for key, value in raw.items():
        lo, hi = (int(s) for s in key.split("-"))
        labels[(lo, hi)] = tuple(value) if isinstance(value, list) else (value,)
    order = order_from_json(data.get("order", {"mode": "lex"}))
    return EdgeLabeling(P, labels, order, name="input")


def labeling_to_json(lam: EdgeLabeling) -> dict:
    return {
        "labels": {f"{a}-{b}": list(v) if isinstance(v, tuple) else [v] for (a, b), v in sorted(lam.labels.items())},
        "order": lam.order.to_json(),
    }
