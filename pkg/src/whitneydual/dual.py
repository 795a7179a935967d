"""Chain posets, exchange classes and the Whitney duals Q_lambda(P) and R_lambda(P)."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Sequence

from .errors import LabelingError, NotCW, NotWhitneyLabeling, StrategyMismatch
from .labeling import (
    EdgeLabeling,
    Labeling,
    LabelOrder,
    Report,
    Verdict,
    _UnionFind,
    all_chains_from_min,
    exchange_system,
    is_ascent_free,
    verify_whitney,
)
from .poset import Chain, Poset, build_poset, chains_from, mobius_row

DEFAULT_CHAIN_CAP = 2_000_000


@dataclass(frozen=True)
class ChainPoset:
    chains: tuple[Chain, ...]
    poset: Poset


def chain_poset(P: Poset, cap: int = DEFAULT_CHAIN_CAP) -> ChainPoset:
    """All saturated chains from the minimum, ordered by extension."""
    chains = all_chains_from_min(P, cap)
    index = {c: i for i, c in enumerate(chains)}
    covers = [(index[c[:-1]], i) for i, c in enumerate(chains) if len(c) > 1]
    names = ["<" + ",".join(P.names[z] for z in c) + ">" for c in chains]
    return ChainPoset(tuple(chains), build_poset(covers, len(chains), names, chains))


def sort_word(w: Sequence, order: LabelOrder) -> tuple:
    """The ascent-free word reached by swapping adjacent ascents."""
    w = list(w)
    i = 0
    while i < len(w) - 1:
        if order.lt(w[i], w[i + 1]):
            w[i], w[i + 1] = w[i + 1], w[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(w)


@dataclass(frozen=True)
class EquivClass:
    members: tuple[Chain, ...]
    endpoint: int
    multiset: tuple  # sorted label multiset S(X)
    canonical_word: tuple  # sort of any member's word
    normal_form: Chain | None  # the unique ascent-free member, when there is one

    @property
    def rank(self) -> int:
        return len(self.members[0]) - 1


def _word_text(w) -> str:
    parts = []
    for a in w:
        if isinstance(a, tuple):
            parts.append("(" + ",".join(str(v) for v in a) + ")")
        else:
            parts.append(str(a))
    return "".join(parts) if all(not isinstance(a, tuple) and 0 <= a < 10 for a in w) else " ".join(parts)


def exchange_classes(P: Poset, lam: Labeling, up_to_rank: int | None = None,
                     strategy: str = "normal_form", cross_check: bool = False,
                     cap: int = DEFAULT_CHAIN_CAP) -> list[EquivClass]:
    """Connected components of the quadratic-exchange graph on chains from the minimum.

    ``strategy`` is ``"normal_form"`` (key each chain by the sink reached by
    exchanges; valid when sinks are unique) or ``"union_find"`` (explicit
    exchange edges). ``cross_check`` runs both and raises StrategyMismatch
    when they disagree.
    """
    es = exchange_system(lam)
    chains = [c for c in all_chains_from_min(P, cap) if up_to_rank is None or len(c) - 1 <= up_to_rank]

    def by_normal_form():
        groups: dict[Chain, list[Chain]] = defaultdict(list)
        for c in chains:
            groups[es.normal_form(c)].append(c)
        return list(groups.values())

    def by_union_find():
        uf = _UnionFind()
        for c in chains:
            uf.add(c)
        for c in chains:
            for i in range(1, len(c) - 1):
                if es.has_ascent(c, i):
                    uf.union(c, es.exchange(c, i))
        groups: dict[Chain, list[Chain]] = defaultdict(list)
        for c in chains:
            groups[uf.find(c)].append(c)
        return list(groups.values())

    if strategy not in ("normal_form", "union_find"):
        raise ValueError(f"unknown strategy {strategy!r}")
    groups = by_normal_form() if strategy == "normal_form" else by_union_find()
    if cross_check:
        other = by_union_find() if strategy == "normal_form" else by_normal_form()
        if {frozenset(g) for g in groups} != {frozenset(g) for g in other}:
            raise StrategyMismatch("normal-form keying and union-find give different classes")

    out = []
    for g in groups:
        g = sorted(g)
        w = es.word(g[0])
        sinks = [c for c in g if is_ascent_free(es.word(c), lam.order)]
        out.append(EquivClass(
            members=tuple(g),
            endpoint=g[0][-1],
            multiset=tuple(sorted(w)),
            canonical_word=sort_word(w, lam.order),
            normal_form=sinks[0] if len(sinks) == 1 else None,
        ))
    out.sort(key=lambda X: (X.rank, X.endpoint, X.canonical_word, X.members[0]))
    return out


@dataclass
class QuotientPoset:
    poset: Poset
    labeling: EdgeLabeling  # lambda*
    classes: list[EquivClass]
    chain_class: dict[Chain, int]
    source: Poset
    source_labeling: Labeling
    verdict: Verdict | None = None


def _require(P: Poset, lam: Labeling, jobs: int) -> Verdict:
    verdict = verify_whitney(P, lam, jobs=jobs)
    if not verdict:
        raise NotWhitneyLabeling(f"labeling is not Whitney: {verdict.reason}", verdict)
    return verdict


def build_Q(P: Poset, lam: Labeling, assume_verified: bool = False, strategy: str = "normal_form",
            cross_check: bool = False, cap: int = DEFAULT_CHAIN_CAP, jobs: int = 1) -> QuotientPoset:
    """Quotient of the chain poset by exchange equivalence, labeled by lambda*."""
    verdict = None if assume_verified else _require(P, lam, jobs)
    classes = exchange_classes(P, lam, strategy=strategy, cross_check=cross_check, cap=cap)
    chain_class = {c: k for k, X in enumerate(classes) for c in X.members}
    covers = set()
    for c, k in chain_class.items():
        for z in P.upper_covers[c[-1]]:
            covers.add((k, chain_class[c + (z,)]))

    labels = {}
    for a, b in covers:
        diff = Counter(classes[b].multiset) - Counter(classes[a].multiset)
        if sum(diff.values()) != 1:
            raise LabelingError("label multisets of a quotient cover do not differ by one letter")
        labels[(a, b)] = next(iter(diff))

    names = []
    seen: Counter = Counter()
    for X in classes:
        name = f"{P.names[X.endpoint]}|{_word_text(X.canonical_word)}"
        seen[name] += 1
        names.append(name if seen[name] == 1 else f"{name}#{seen[name]}")
    keys = [(X.endpoint, X.canonical_word) for X in classes]
    Q = build_poset(covers, len(classes), names, keys)
    star = EdgeLabeling(Q, labels, lam.order, name="lambda_star")
    return QuotientPoset(Q, star, classes, chain_class, P, lam, verdict)


@dataclass
class RPoset:
    poset: Poset
    pairs: list[tuple[int, tuple]]
    chain_of: dict[tuple[int, tuple], Chain]


def build_R(P: Poset, lam: Labeling, assume_verified: bool = False, jobs: int = 1) -> RPoset:
    """Pairs (x, w) with w the word of an ascent-free chain from the minimum to x;
    (x, w) < (y, sort(w + label)) for each cover x < y."""
    if not assume_verified:
        verdict = verify_whitney(P, lam, jobs=jobs)
        if verdict.verdict not in ("EW", "CW"):
            raise NotCW(f"R needs word uniqueness; verdict was {verdict.verdict}", verdict)
    es = exchange_system(lam)
    chain_of: dict[tuple[int, tuple], Chain] = {}
    for c in all_chains_from_min(P):
        w = es.word(c)
        if is_ascent_free(w, lam.order):
            key = (c[-1], w)
            if key in chain_of:
                raise NotCW("two ascent-free chains share an endpoint and a word")
            chain_of[key] = c
    pairs = sorted(chain_of, key=lambda p: (P.rank[p[0]], p[0], p[1]))
    index = {p: i for i, p in enumerate(pairs)}
    covers = []
    for (x, w), c in chain_of.items():
        for y in P.upper_covers[x]:
            u = sort_word(w + (lam.label(c + (y,)),), lam.order)
            if (y, u) not in index:
                raise NotCW(f"sorted word {u} is not realized below {P.names[y]}")
            covers.append((index[(x, w)], index[(y, u)]))
    names = [f"{P.names[x]}|{_word_text(w)}" for x, w in pairs]
    return RPoset(build_poset(covers, len(pairs), names, pairs), pairs, chain_of)


def verify_R_iso_Q(P: Poset, lam: Labeling, assume_verified: bool = False) -> bool:
    """Check that (x, w) -> [ascent-free chain with word w] is a cover-preserving bijection."""
    R = build_R(P, lam, assume_verified=assume_verified)
    Q = build_Q(P, lam, assume_verified=True)
    phi = [Q.chain_class[R.chain_of[p]] for p in R.pairs]
    if sorted(phi) != list(range(Q.poset.n)):
        return False
    mapped = {(phi[a], phi[b]) for a, b in R.poset.covers}
    return mapped == set(Q.poset.covers)


def _increasing_extensions(P: Poset, lam: Labeling, c: Chain) -> dict[int, list[Chain]]:
    """Increasing saturated chains above the top of ``c`` (labels read through c)."""
    out: dict[int, list[Chain]] = defaultdict(list)
    stack = [(c, None)]
    while stack:
        d, last = stack.pop()
        out[d[-1]].append(d)
        for z in P.upper_covers[d[-1]]:
            e = d + (z,)
            lab = lam.label(e)
            if last is None or lam.order.lt(last, lab):
                stack.append((e, lab))
    return out


def mobius_Q_check(P: Poset, lam: Labeling, Q: QuotientPoset | None = None) -> Report:
    """Every mu([X, Y]) of Q is (-1)^(rank difference) exactly when Y holds c + d with
    d the unique increasing chain above c in X, and 0 otherwise."""
    if Q is None:
        Q = build_Q(P, lam)
    QP = Q.poset
    values = Counter()
    for X in range(QP.n):
        c = Q.classes[X].members[0]
        inc = _increasing_extensions(P, lam, c)
        row = mobius_row(QP, X)
        for Y, mu in row.items():
            values[mu] += 1
            y = Q.classes[Y].endpoint
            found = inc.get(y, [])
            if len(found) != 1:
                return Report("mobius-Q", "fail", {
                    "reason": f"{len(found)} increasing chains in the rooted interval",
                    "interval": [QP.names[X], QP.names[Y]]})
            expected = (-1) ** (QP.rank[Y] - QP.rank[X]) if Q.chain_class[found[0]] == Y else 0
            if mu != expected:
                return Report("mobius-Q", "fail", {
                    "reason": f"mu = {mu}, expected {expected}",
                    "interval": [QP.names[X], QP.names[Y]]})
    return Report("mobius-Q", "pass", details={"values": {str(k): v for k, v in sorted(values.items())}})


def dual_chain_to_source(Q: QuotientPoset, d: Chain) -> Chain:
    return tuple(Q.classes[X].endpoint for X in d)


def chain_bijection_check(P: Poset, lam: Labeling, Q: QuotientPoset | None = None) -> Report:
    """Chains of Q from its minimum map bijectively, and word-preservingly, onto
    chains of P from its minimum via their endpoints."""
    if Q is None:
        Q = build_Q(P, lam)
    es = exchange_system(lam)
    star = Q.labeling
    images = {}
    for d in chains_from(Q.poset, (Q.poset.min_element,)):
        c = dual_chain_to_source(Q, d)
        if any(b not in P.upper_covers[a] for a, b in zip(c, c[1:])):
            return Report("chain-bijection", "fail", {"reason": "image is not a saturated chain",
                                                      "chain": [Q.poset.names[X] for X in d]})
        w_star = tuple(star.edge(a, b) for a, b in zip(d, d[1:]))
        if w_star != es.word(c):
            return Report("chain-bijection", "fail", {"reason": "words differ",
                                                      "chain": [Q.poset.names[X] for X in d]})
        if c in images:
            return Report("chain-bijection", "fail", {"reason": "two dual chains share an image"})
        images[c] = d
    if set(images) != set(all_chains_from_min(P)):
        return Report("chain-bijection", "fail", {"reason": "map is not onto"})
    return Report("chain-bijection", "pass", details={"chains": len(images)})
