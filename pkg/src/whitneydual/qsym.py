"""Flag vectors, flag quasisymmetric functions in the fundamental basis, the
omega involution and the 0-Hecke action on maximal chains."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import NoUniqueMaximum, NotWhitneyLabeling, RankMismatch
from .labeling import Labeling, LabelOrder, Report, exchange_system, verify_whitney
from .poset import Chain, Poset, maximal_chains

Subset = frozenset


def subsets(n: int) -> list[frozenset[int]]:
    """All subsets of [n-1], ordered by size then lexicographically."""
    ground = range(1, n)
    return [frozenset(s) for k in range(n) for s in combinations(ground, k)]


def _subset_text(S: Iterable[int]) -> str:
    return ",".join(str(i) for i in sorted(S))


@dataclass(frozen=True)
class QSymFundamental:
    """sum_S coeffs[S] * L_{S,degree}; zero coefficients are dropped."""

    degree: int
    coeffs: tuple[tuple[frozenset, int], ...]

    @classmethod
    def from_dict(cls, degree: int, coeffs: dict) -> "QSymFundamental":
        items = [(frozenset(S), int(c)) for S, c in coeffs.items() if c]
        for S, _ in items:
            if any(not 1 <= i < max(degree, 1) for i in S):
                raise ValueError(f"{set(S)} is not a subset of [{degree - 1}]")
        items.sort(key=lambda t: (len(t[0]), sorted(t[0])))
        return cls(degree, tuple(items))

    def as_dict(self) -> dict[frozenset, int]:
        return dict(self.coeffs)

    def __getitem__(self, S) -> int:
        return self.as_dict().get(frozenset(S), 0)

    def __add__(self, other: "QSymFundamental") -> "QSymFundamental":
        if self.degree != other.degree:
            raise RankMismatch("cannot add quasisymmetric functions of different degrees")
        total = Counter(self.as_dict())
        total.update(other.as_dict())
        return QSymFundamental.from_dict(self.degree, total)

    def __str__(self):
        if not self.coeffs:
            return f"0  [degree {self.degree}]"
        terms = []
        for S, c in self.coeffs:
            inside = _subset_text(S) if S else "∅"
            terms.append(f"{c}*L{{{inside}}}")
        return " + ".join(terms).replace("+ -", "- ") + f"  [degree {self.degree}]"

    def to_json(self) -> dict:
        return {"n": self.degree, "coeffs": {_subset_text(S): c for S, c in self.coeffs}}

    @classmethod
    def from_json(cls, data: dict) -> "QSymFundamental":
        coeffs = {}
        for key, c in data["coeffs"].items():
            coeffs[frozenset(int(i) for i in key.split(",") if i)] = c
        return cls.from_dict(int(data["n"]), coeffs)


def omega(q: QSymFundamental) -> QSymFundamental:
    full = frozenset(range(1, q.degree))
    return QSymFundamental.from_dict(q.degree, {full - S: c for S, c in q.coeffs})


@dataclass(frozen=True)
class FlagVectors:
    rank: int
    alpha: dict
    beta: dict


def _level_matrix(P: Poset, below: int, lo: int, hi: int) -> np.ndarray:
    """0/1 comparability between rank-lo and rank-hi elements inside ``below``."""
    rows = [x for x in P.by_rank[lo] if below >> x & 1]
    cols = [y for y in P.by_rank[hi] if below >> y & 1]
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, x in enumerate(rows):
        up = P.up_sets[x]
        for j, y in enumerate(cols):
            M[i, j] = up >> y & 1
    return M


def _flag_of_interval(P: Poset, top: int) -> FlagVectors:
    n = P.rank[top]
    below = P.down_sets[top]
    cache: dict[tuple[int, int], np.ndarray] = {}

    def mat(a, b):
        if (a, b) not in cache:
            cache[(a, b)] = _level_matrix(P, below, a, b)
        return cache[(a, b)]

    alpha = {}
    for S in subsets(n):
        ranks = [0] + sorted(S) + [n]
        v = np.ones((1, 1), dtype=np.int64)
        for a, b in zip(ranks, ranks[1:]):
            v = v @ mat(a, b)
        alpha[S] = int(v.sum())
    beta = {}
    for S in subsets(n):
        beta[S] = sum((-1) ** (len(S) - len(T)) * alpha[T] for T in subsets(n) if T <= S)
    return FlagVectors(n, alpha, beta)


def flag_vectors(P: Poset) -> FlagVectors:
    """Flag f-vector (alpha) and flag h-vector (beta) of a bounded poset."""
    top = P.maximum
    if top is None:
        raise NoUniqueMaximum(f"{len(P.maximal_elements)} maximal elements")
    return _flag_of_interval(P, top)


def flag_qsym(P: Poset) -> QSymFundamental:
    """Sum over maximal elements m of sum_S beta_[0,m](S) L_{S,n}."""
    tops = P.maximal_elements
    ranks = {P.rank[m] for m in tops}
    if len(ranks) != 1:
        raise RankMismatch(f"maximal elements sit at ranks {sorted(ranks)}")
    (n,) = ranks
    total: Counter = Counter()
    for m in tops:
        total.update(_flag_of_interval(P, m).beta)
    return QSymFundamental.from_dict(n, total)


# 0-Hecke action

@dataclass
class HeckeOrbitData:
    chains: list[Chain]
    operators: list[tuple[int, ...]]  # operators[i-1][k] = index of U_i(chains[k])
    words: list[tuple]
    order: LabelOrder
    degree: int
    index: dict[Chain, int] = field(default_factory=dict)

    def apply(self, i: int, k: int) -> int:
        return self.operators[i - 1][k]


def _pure_rank(chains: list[Chain]) -> int:
    lengths = {len(c) - 1 for c in chains}
    if len(lengths) != 1:
        raise RankMismatch(f"maximal chains have lengths {sorted(lengths)}")
    return lengths.pop()


def hecke_action(P: Poset, lam: Labeling, assume_verified: bool = False) -> HeckeOrbitData:
    """The operators U_i on the maximal chains of P."""
    if not assume_verified:
        verdict = verify_whitney(P, lam)
        if not verdict:
            raise NotWhitneyLabeling(f"labeling is not Whitney: {verdict.reason}", verdict)
    es = exchange_system(lam)
    chains = maximal_chains(P)
    n = _pure_rank(chains)
    index = {c: k for k, c in enumerate(chains)}
    ops = [tuple(index[es.exchange(c, i)] for c in chains) for i in range(1, n)]
    return HeckeOrbitData(chains, ops, [es.word(c) for c in chains], lam.order, n, index)


def hecke_on_dual(Q) -> HeckeOrbitData:
    """The action transported to maximal chains of a quotient dual through the
    endpoint bijection of chains."""
    from .dual import dual_chain_to_source

    P, lam = Q.source, Q.source_labeling
    base = hecke_action(P, lam, assume_verified=True)
    QP = Q.poset
    chains = maximal_chains(QP)
    n = _pure_rank(chains)
    image = {dual_chain_to_source(Q, d): k for k, d in enumerate(chains)}
    to_q = [image[c] for c in base.chains]
    ops = []
    for i in range(1, n):
        op = []
        for d in chains:
            k = base.index[dual_chain_to_source(Q, d)]
            op.append(to_q[base.apply(i, k)])
        ops.append(tuple(op))
    star = Q.labeling
    words = [tuple(star.edge(a, b) for a, b in zip(d, d[1:])) for d in chains]
    return HeckeOrbitData(chains, ops, words, star.order, n, {d: k for k, d in enumerate(chains)})


def verify_hecke_relations(H: HeckeOrbitData) -> Report:
    """Locality, idempotence, far commutation and braid relations, exhaustively."""
    results = {}
    bad = None
    m = len(H.chains)
    U = H.operators
    r = len(U)

    def record(name, ok, example=None):
        nonlocal bad
        results[name] = "pass" if ok else "fail"
        if not ok and bad is None:
            bad = {"reason": f"{name} relation fails", **(example or {})}

    local = None
    for i in range(r):
        for k in range(m):
            c, d = H.chains[k], H.chains[U[i][k]]
            diff = [j for j in range(len(c)) if c[j] != d[j]]
            if diff and diff != [i + 1]:
                local = {"rank": i + 1, "chain": k}
                break
        if local:
            break
    record("local", local is None, local)

    idem = next(({"rank": i + 1, "chain": k} for i in range(r) for k in range(m)
                 if U[i][U[i][k]] != U[i][k]), None)
    record("idempotent", idem is None, idem)

    comm = next(({"ranks": [i + 1, j + 1], "chain": k} for i in range(r) for j in range(i + 2, r)
                 for k in range(m) if U[i][U[j][k]] != U[j][U[i][k]]), None)
    record("commute", comm is None, comm)

    braid = next(({"rank": i + 1, "chain": k} for i in range(r - 1) for k in range(m)
                  if U[i][U[i + 1][U[i][k]]] != U[i + 1][U[i][U[i + 1][k]]]), None)
    record("braid", braid is None, braid)

    return Report("hecke", "pass" if bad is None else "fail", bad, details=results)


def _descents(word, order) -> frozenset[int]:
    return frozenset(i for i in range(1, len(word)) if not order.lt(word[i - 1], word[i]))


def characteristic(H: HeckeOrbitData, lam: Labeling | None = None) -> QSymFundamental:
    """sum_S #{c : D(c) = S} L_{S,n}, the characteristic of the chain representation."""
    if lam is not None:
        es = exchange_system(lam)
        words = [es.word(c) for c in H.chains]
        order = lam.order
    else:
        words, order = H.words, H.order
    return QSymFundamental.from_dict(H.degree, Counter(_descents(w, order) for w in words))


def beta_from_descents(P: Poset, lam: Labeling, top: int, star: bool = False) -> dict:
    """beta of [0, top] tallied from descent sets of maximal chains.

    For ER labelings beta(S) counts chains with descent set S; for ER*
    labelings it counts chains with descent set equal to the complement of S.
    """
    from .poset import saturated_chains

    es = exchange_system(lam)
    n = P.rank[top]
    full = frozenset(range(1, n))
    tally: Counter = Counter()
    for c in saturated_chains(P, P.min_element, top):
        D = _descents(es.word(c), lam.order)
        tally[full - D if star else D] += 1
    return {S: tally.get(S, 0) for S in subsets(n)}
