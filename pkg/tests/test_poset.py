import random

import pytest
from hypothesis import given, settings

from conftest import graded_posets
from oracles import brute_mobius, chain_count_matrix, nx_isomorphic, order_relation
from whitneydual.errors import (
    CycleDetected,
    NoUniqueMinimum,
    NotComparable,
    NotGraded,
    NotTransitivelyReduced,
)
from whitneydual.families import increasing_forest_poset, noncrossing_lattice, partition_lattice
from whitneydual.poset import (
    are_isomorphic,
    build_poset,
    count_saturated_chains,
    find_isomorphism,
    interval,
    is_bowtie_free,
    is_eulerian,
    is_lattice,
    is_whitney_dual_pair,
    mobius,
    saturated_chains,
    whitney_first,
    whitney_second,
)

B2 = build_poset([(0, 1), (0, 2), (1, 3), (2, 3)], 4)
CHAIN3 = build_poset([(0, 1), (1, 2)], 3)


def test_two_chain():
    P = build_poset({(0, 1)}, 2)
    assert P.rank == (0, 1)
    assert P.min_element == 0


def test_partition_lattice_rank_counts():
    P, _ = partition_lattice(3)
    assert whitney_second(P) == (1, 3, 1)


@pytest.mark.parametrize("covers,n,err", [
    ([(0, 1), (1, 0)], 2, CycleDetected),
    ([(0, 2), (1, 2)], 3, NoUniqueMinimum),
    ([(0, 1), (1, 2), (0, 2)], 3, NotTransitivelyReduced),
    # pentagon: one side is longer than the other
    ([(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)], 5, NotGraded),
])
def test_build_errors(covers, n, err):
    with pytest.raises(err):
        build_poset(covers, n)


def test_mobius_values():
    P, _ = partition_lattice(3)
    assert mobius(P, P.min_element, P.maximum) == 2
    N, _ = noncrossing_lattice(4)
    assert mobius(N, N.min_element, N.maximum) == -5
    for x in range(P.n):
        assert mobius(P, x, x) == 1
    with pytest.raises(NotComparable):
        mobius(P, 1, 2)


def test_whitney_table():
    P, _ = partition_lattice(3)
    I, _ = increasing_forest_poset(3)
    assert (whitney_first(P), whitney_second(P)) == ((1, -3, 2), (1, 3, 1))
    assert (whitney_first(I), whitney_second(I)) == ((1, -3, 1), (1, 3, 2))
    one = build_poset([], 1)
    assert whitney_first(one) == (1,) == whitney_second(one)


def test_dual_pairs():
    P, _ = partition_lattice(3)
    I, _ = increasing_forest_poset(3)
    assert is_whitney_dual_pair(P, I)
    assert not is_whitney_dual_pair(CHAIN3, CHAIN3)
    assert is_whitney_dual_pair(B2, B2)


def test_eulerian():
    P, _ = partition_lattice(3)
    assert is_eulerian(B2)
    assert not is_eulerian(P)
    assert is_eulerian(build_poset([(0, 1)], 2))
    # no unique maximum
    assert not is_eulerian(build_poset([(0, 1), (0, 2)], 3))


def test_saturated_chains():
    P, _ = partition_lattice(3)
    assert len(saturated_chains(P, P.min_element, P.maximum)) == 3
    N, _ = noncrossing_lattice(4)
    chains = saturated_chains(N, N.min_element, N.maximum)
    assert len(chains) == 16 and chains == sorted(chains)
    assert saturated_chains(P, 2, 2) == [(2,)]


def test_isomorphism_examples():
    P, _ = partition_lattice(3)
    phi = find_isomorphism(P, P)
    assert phi == {x: x for x in range(P.n)}
    assert not are_isomorphic(P, increasing_forest_poset(3)[0])


def test_bowtie():
    assert is_bowtie_free(B2)
    bowtie = build_poset([(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)], 5)
    assert not is_bowtie_free(bowtie)
    assert is_bowtie_free(CHAIN3)


def test_lattice_probe():
    assert is_lattice(B2)
    assert not is_lattice(build_poset([(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)], 5))


def test_interval_subposet():
    P, _ = partition_lattice(4)
    x = P.index_of("12/3/4")
    I = interval(P, x, P.maximum)
    assert whitney_second(I) == (1, 3, 1)


@settings(max_examples=60, deadline=None)
@given(graded_posets())
def test_mobius_matches_brute_force(P):
    mu = brute_mobius(P.n, P.covers)
    for x in range(P.n):
        for y in range(P.n):
            if P.leq(x, y):
                assert mobius(P, x, y) == mu[(x, y)]


@settings(max_examples=60, deadline=None)
@given(graded_posets())
def test_zeta_convolution_vanishes(P):
    for x in range(P.n):
        for y in range(P.n):
            if x != y and P.leq(x, y):
                assert sum(mobius(P, x, z) for z in range(P.n) if P.leq(x, z) and P.leq(z, y)) == 0


@settings(max_examples=60, deadline=None)
@given(graded_posets())
def test_whitney_numbers_match_brute_force(P):
    mu = brute_mobius(P.n, P.covers)
    w = [0] * (P.max_rank + 1)
    W = [0] * (P.max_rank + 1)
    for x in range(P.n):
        w[P.rank[x]] += mu[(P.min_element, x)]
        W[P.rank[x]] += 1
    assert whitney_first(P) == tuple(w)
    assert whitney_second(P) == tuple(W)


@settings(max_examples=60, deadline=None)
@given(graded_posets())
def test_chain_counts_match_matrix_products(P):
    M = chain_count_matrix(P.n, P.covers, P.rank)
    R = order_relation(P.n, P.covers)
    for x in range(P.n):
        counts = count_saturated_chains(P, x)
        for y in range(P.n):
            if R[x, y]:
                assert len(saturated_chains(P, x, y)) == M[x, y] == counts[y]


@settings(max_examples=60, deadline=None)
@given(graded_posets())
def test_isomorphism_against_relabeling(P):
    rng = random.Random(P.n * 7919 + len(P.covers))
    perm = list(range(P.n))
    rest = perm[1:]
    rng.shuffle(rest)
    perm = [0] + rest if P.min_element == 0 else perm
    Q = build_poset([(perm[a], perm[b]) for a, b in P.covers], P.n)
    phi = find_isomorphism(P, Q)
    assert phi is not None
    assert sorted(phi.values()) == list(range(P.n))
    assert all(P.rank[x] == Q.rank[phi[x]] for x in range(P.n))
    assert {(phi[a], phi[b]) for a, b in P.covers} == set(Q.covers)
    assert are_isomorphic(Q, P)


@settings(max_examples=80, deadline=None)
@given(graded_posets(max_levels=3), graded_posets(max_levels=3))
def test_isomorphism_agrees_with_networkx(P, Q):
    assert are_isomorphic(P, Q) == nx_isomorphic(P, Q)
