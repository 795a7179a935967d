from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graded_posets
from oracles import brute_alpha
from whitneydual.dual import build_Q
from whitneydual.errors import NoUniqueMaximum, NotWhitneyLabeling, RankMismatch
from whitneydual.families import (
    increasing_forest_poset,
    lambda_C,
    lambda_E,
    ncdyck_poset,
    noncrossing_lattice,
    partition_lattice,
    weighted_partition_poset,
)
from whitneydual.labeling import constant_labeling
from whitneydual.poset import build_poset, interval, maximal_chains
from whitneydual.qsym import (
    QSymFundamental,
    beta_from_descents,
    characteristic,
    flag_qsym,
    flag_vectors,
    hecke_action,
    hecke_on_dual,
    omega,
    subsets,
    verify_hecke_relations,
)


def q(n, pairs):
    return QSymFundamental.from_dict(n, {frozenset(S): c for S, c in pairs})


def test_flag_vectors_examples():
    P, _ = partition_lattice(3)
    f = flag_vectors(P)
    assert f.beta[frozenset()] == 1 and f.beta[frozenset({1})] == 2
    N, _ = noncrossing_lattice(4)
    b = flag_vectors(N).beta
    assert [b[S] for S in subsets(3)] == [1, 5, 5, 5]
    two = flag_vectors(build_poset([(0, 1)], 2))
    assert two.alpha == {frozenset(): 1} == two.beta
    with pytest.raises(NoUniqueMaximum):
        flag_vectors(increasing_forest_poset(3)[0])


@settings(max_examples=50, deadline=None)
@given(graded_posets())
def test_alpha_matches_brute_force(P):
    for m in P.maximal_elements:
        I = interval(P, P.min_element, m)
        fv = flag_vectors(I)
        assert fv.alpha == brute_alpha(I.n, I.covers, I.rank, I.maximum)
        assert all(v >= 0 for v in fv.alpha.values())


def test_flag_qsym_examples():
    P, _ = partition_lattice(3)
    I, _ = increasing_forest_poset(3)
    FP = flag_qsym(P)
    FI = flag_qsym(I)
    assert FP == q(2, [((), 1), ((1,), 2)])
    assert FI == q(2, [((), 2), ((1,), 1)])
    assert omega(FP) == FI
    FD = flag_qsym(ncdyck_poset(4))
    assert FD == q(3, [((), 5), ((1,), 5), ((2,), 5), ((1, 2), 1)])
    N, _ = noncrossing_lattice(4)
    assert omega(flag_qsym(N)) == FD


def test_flag_qsym_rank_mismatch():
    P = build_poset([(0, 1), (0, 2), (1, 3)], 4)
    with pytest.raises(RankMismatch):
        flag_qsym(P)


@given(st.integers(1, 5), st.data())
def test_omega_involution(n, data):
    coeffs = {S: data.draw(st.integers(-3, 3)) for S in subsets(n)}
    f = QSymFundamental.from_dict(n, coeffs)
    assert omega(omega(f)) == f
    assert sum(c for _, c in omega(f).coeffs) == sum(c for _, c in f.coeffs)


def test_qsym_formats():
    f = q(3, [((), 5), ((1,), 5), ((2,), 5), ((1, 2), 1)])
    assert str(f) == "5*L{∅} + 5*L{1} + 5*L{2} + 1*L{1,2}  [degree 3]"
    assert f.to_json() == {"n": 3, "coeffs": {"": 5, "1": 5, "2": 5, "1,2": 1}}
    assert QSymFundamental.from_json(f.to_json()) == f
    assert f[{1, 2}] == 1 and f[{3}] == 0
    assert (f + omega(f))[()] == 6
    with pytest.raises(ValueError):
        q(2, [((2,), 1)])


def _cases():
    yield "pi4", *partition_lattice(4)
    yield "nc4", *noncrossing_lattice(4)
    yield "piw3e", weighted_partition_poset(3), lambda_E(3)
    yield "piw4c", weighted_partition_poset(4), lambda_C(4)


@pytest.mark.parametrize("name,P,lam", list(_cases()), ids=lambda v: v if isinstance(v, str) else "")
def test_dual_flag_is_omega(name, P, lam):
    Q = build_Q(P, lam)
    assert flag_qsym(Q.poset) == omega(flag_qsym(P))


def test_beta_from_descents():
    N, lam = noncrossing_lattice(4)
    assert beta_from_descents(N, lam, N.maximum) == flag_vectors(N).beta
    P, lp = partition_lattice(4)
    assert beta_from_descents(P, lp, P.maximum) == flag_vectors(P).beta
    I, star = increasing_forest_poset(4)
    full = Counter()
    for m in I.maximal_elements:
        full.update(beta_from_descents(I, star, m, star=True))
    assert QSymFundamental.from_dict(3, full) == flag_qsym(I)


def test_beta_sum_counts_chains():
    N, _ = noncrossing_lattice(5)
    b = flag_vectors(N).beta
    assert sum(b.values()) == len(maximal_chains(N)) == 125
    assert b[frozenset()] == 1


def test_hecke_nc4_example():
    N, lam = noncrossing_lattice(4)
    H = hecke_action(N, lam)
    c = tuple(N.index_of(s) for s in ("1/2/3/4", "13/2/4", "123/4", "1234"))
    k = H.index[c]
    assert H.apply(1, k) == k
    assert H.chains[H.apply(2, k)][2] == N.index_of("134/2")


def test_hecke_pi3_orbit():
    P, lam = partition_lattice(3)
    H = hecke_action(P, lam)
    inc = tuple(P.index_of(s) for s in ("1/2/3", "12/3", "123"))
    k = H.index[inc]
    orbit = {k, H.apply(1, k), H.apply(1, H.apply(1, k))}
    assert len(orbit) == 2
    assert H.words[H.apply(1, k)] == ((1, 3), (1, 2))


def test_hecke_rejects_non_whitney():
    P, _ = partition_lattice(3)
    with pytest.raises(NotWhitneyLabeling):
        hecke_action(P, constant_labeling(P))


@pytest.mark.parametrize("name,P,lam", [
    ("pi4", *partition_lattice(4)),
    ("nc5", *noncrossing_lattice(5)),
    ("piw4c", weighted_partition_poset(4), lambda_C(4)),
], ids=lambda v: v if isinstance(v, str) else "")
def test_hecke_relations(name, P, lam):
    H = hecke_action(P, lam)
    rep = verify_hecke_relations(H)
    assert rep, rep.counterexample
    assert rep.details == {"local": "pass", "idempotent": "pass", "commute": "pass", "braid": "pass"}
    assert characteristic(H) == flag_qsym(P)
    Q = build_Q(P, lam)
    HQ = hecke_on_dual(Q)
    assert verify_hecke_relations(HQ)
    assert characteristic(HQ) == omega(flag_qsym(Q.poset)) == flag_qsym(P)


def test_hecke_relations_detect_non_idempotent():
    P, lam = partition_lattice(3)
    H = hecke_action(P, lam)
    # a transposition of two chains is not idempotent
    swap = list(range(len(H.chains)))
    swap[0], swap[1] = 1, 0
    H.operators = [tuple(swap)]
    rep = verify_hecke_relations(H)
    assert not rep and rep.details["idempotent"] == "fail"


def test_characteristic_examples():
    P, lam = partition_lattice(3)
    assert characteristic(hecke_action(P, lam)) == flag_qsym(P)
    N, ln = noncrossing_lattice(4)
    assert characteristic(hecke_action(N, ln), ln) == flag_qsym(N)
