from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whitneydual.errors import LabelingError, MissingLabel, SwitchingViolation
from whitneydual.families import (
    increasing_forest_poset,
    lambda_C,
    lambda_E,
    noncrossing_lattice,
    partition_lattice,
    weighted_partition_poset,
)
from whitneydual.labeling import (
    CustomOrder,
    EdgeLabeling,
    GammaOrder,
    LexOrder,
    WordClass,
    all_chains_from_min,
    ascent_set,
    classify_word,
    constant_labeling,
    descent_set,
    exchange_system,
    quadratic_exchange,
    verify_braid,
    verify_cancellative,
    verify_CW,
    verify_ER,
    verify_ER_star,
    verify_EW,
    verify_rank_two_switching,
    word_of_labels,
)
from whitneydual.poset import build_poset, saturated_chains

LEX = LexOrder()


def chain(P, *names):
    return tuple(P.index_of(s) for s in names)


def test_words():
    P, lam = partition_lattice(3)
    assert word_of_labels(lam, chain(P, "1/2/3", "12/3", "123")) == ((1, 2), (1, 3))
    W = weighted_partition_poset(3)
    assert word_of_labels(lambda_C(3), (W.min_element,)) == ()
    N, ln = noncrossing_lattice(4)
    # max{a in {1,3} : a < 2} = 1, then max{a in {1,2,3} : a < 4} = 3
    assert word_of_labels(ln, chain(N, "1/2/3/4", "13/2/4", "123/4", "1234")) == (1, 1, 3)


def test_missing_label():
    P = build_poset([(0, 1), (1, 2)], 3)
    with pytest.raises(MissingLabel):
        EdgeLabeling(P, {(0, 1): (1,)}, LEX)


def test_classify():
    assert classify_word(((1, 2), (1, 3)), LEX) is WordClass.INCREASING
    assert classify_word(((1, 3), (1, 2)), LEX) is WordClass.ASCENT_FREE
    assert classify_word((), LEX) is WordClass.INCREASING
    assert classify_word((1, 3, 2), LEX) is WordClass.MIXED


def test_incomparable_labels_are_not_ascents():
    g = GammaOrder(3)
    a, b = (1, 2, 1), (1, 3, 0)
    assert not g.lt(a, b) and not g.lt(b, a)
    assert classify_word((a, b), g) is WordClass.ASCENT_FREE
    # ordinal sum: anything with first coordinate 1 is below first coordinate 2
    assert g.lt((1, 3, 1), (2, 3, 0))


def test_custom_order_closure_and_validation():
    o = CustomOrder([((1,), (2,)), ((2,), (3,))])
    assert o.lt((1,), (3,))
    with pytest.raises(LabelingError):
        CustomOrder([((1,), (2,)), ((2,), (1,))])


def test_er_examples():
    P, lam = partition_lattice(3)
    assert verify_ER(P, lam)
    I, star = increasing_forest_poset(3)
    assert verify_ER_star(I, star)
    bad = verify_ER(P, constant_labeling(P))
    assert not bad
    assert bad.counterexample["interval"] == ["1/2/3", "123"]


def test_exchange_examples():
    P, lam = partition_lattice(3)
    c = chain(P, "1/2/3", "12/3", "123")
    d = quadratic_exchange(lam, c, 1)
    assert d == chain(P, "1/2/3", "13/2", "123")
    assert word_of_labels(lam, d) == ((1, 3), (1, 2))
    assert quadratic_exchange(lam, d, 1) == d
    N, ln = noncrossing_lattice(4)
    c = chain(N, "1/2/3/4", "13/2/4", "123/4", "1234")
    assert quadratic_exchange(ln, c, 1) == c
    assert quadratic_exchange(ln, c, 2) == chain(N, "1/2/3/4", "13/2/4", "134/2", "1234")


def test_exchange_violation():
    # two chains with the same swapped word: partner is not unique
    P = build_poset([(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)], 5)
    labels = {(0, 1): 1, (1, 4): 2, (0, 2): 2, (2, 4): 1, (0, 3): 2, (3, 4): 1}
    lam = EdgeLabeling(P, labels, LEX)
    with pytest.raises(SwitchingViolation):
        quadratic_exchange(lam, (0, 1, 4), 1)
    assert not verify_rank_two_switching(P, lam)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_switching_partitions(n):
    assert verify_rank_two_switching(*partition_lattice(n))


@pytest.mark.parametrize("n", [3, 4])
def test_switching_lambda_c(n):
    assert verify_rank_two_switching(weighted_partition_poset(n), lambda_C(n))


def test_switching_detects_prefix_dependence():
    P, lam = partition_lattice(3)
    from whitneydual.labeling import ChainEdgeLabeling

    calls = Counter()

    def flaky(prefix):
        calls[prefix] += 1
        return (calls[prefix],)

    bad = ChainEdgeLabeling(P, flaky, LEX)
    rep = verify_rank_two_switching(P, bad)
    assert not rep and "prefix" in rep.counterexample["reason"]


def test_braid():
    assert verify_braid(*noncrossing_lattice(4))
    assert verify_braid(*partition_lattice(4))
    P = build_poset([(0, 1), (1, 2)], 3)
    assert verify_braid(P, constant_labeling(P))


def test_cancellative():
    assert verify_cancellative(*partition_lattice(3))
    assert verify_cancellative(weighted_partition_poset(3), lambda_E(3))
    assert verify_cancellative(weighted_partition_poset(3), lambda_C(3))
    gated = verify_cancellative(*partition_lattice(4), max_chains=10)
    assert gated.status == "skipped"


@pytest.mark.parametrize("n", [3, 4, 5])
def test_ew_verdicts(n):
    assert verify_EW(*noncrossing_lattice(n)).verdict == "EW"
    assert verify_EW(*partition_lattice(n)).verdict == "EW"


@pytest.mark.parametrize("n", [3, 4])
def test_weighted_verdicts(n):
    W = weighted_partition_poset(n)
    assert verify_EW(W, lambda_E(n)).verdict == "EW"
    assert verify_CW(W, lambda_C(n)).verdict == "CW"
    assert verify_EW(W, lambda_C(n)).verdict == "fail"


def test_verdict_fails_on_isf():
    I, star = increasing_forest_poset(3)
    v = verify_EW(I, star)
    assert v.verdict == "fail"
    assert v.counterexample()["interval"] == ["{}", "{12,23}"]


def test_parallel_scan_matches_serial():
    N, ln = noncrossing_lattice(6)
    assert verify_ER(N, ln, jobs=2).to_json() == verify_ER(N, ln).to_json()


def test_descents():
    P, lam = partition_lattice(3)
    inc = chain(P, "1/2/3", "12/3", "123")
    assert descent_set(lam, inc) == frozenset()
    for names in (("1/2/3", "13/2", "123"), ("1/2/3", "1/23", "123")):
        assert descent_set(lam, chain(P, *names)) == {1}
    N, ln = noncrossing_lattice(4)
    [c] = [c for c in saturated_chains(N, N.min_element, N.maximum) if word_of_labels(ln, c) == (3, 2, 1)]
    assert descent_set(ln, c) == {1, 2}
    assert ascent_set(ln, c) == frozenset()


@pytest.mark.parametrize("family", ["pi4", "nc5", "piw3e", "piw4c"])
def test_exchange_invariants(family):
    if family == "pi4":
        P, lam = partition_lattice(4)
    elif family == "nc5":
        P, lam = noncrossing_lattice(5)
    elif family == "piw3e":
        P, lam = weighted_partition_poset(3), lambda_E(3)
    else:
        P, lam = weighted_partition_poset(4), lambda_C(4)
    es = exchange_system(lam)
    order = lam.order
    for c in all_chains_from_min(P):
        w = es.word(c)
        for i in range(1, len(w)):
            d = es.exchange(c, i)
            v = es.word(d)
            assert d[-1] == c[-1] and sorted(v) == sorted(w)
            assert not order.lt(v[i - 1], v[i])
            assert es.exchange(d, i) == d
            if d != c:
                inv = lambda u: sum(order.lt(u[a], u[b]) for a in range(len(u)) for b in range(a + 1, len(u)))
                assert inv(v) < inv(w)
        if classify_word(w, order) is WordClass.INCREASING:
            assert descent_set(lam, c) == frozenset()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 6), max_size=7))
def test_lex_classification_consistent(w):
    cls = classify_word(tuple(w), LEX)
    strictly_up = all(a < b for a, b in zip(w, w[1:]))
    no_ascent = all(a >= b for a, b in zip(w, w[1:]))
    assert (cls is WordClass.INCREASING) == strictly_up
    if not strictly_up:
        assert (cls is WordClass.ASCENT_FREE) == no_ascent
