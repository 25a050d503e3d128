import pickle
import threading

import pytest
from hypothesis import given, strategies as st

from conftest import hsets
import oracles as O
from hfforcing import (
    EMPTY, BudgetExceeded, HSet, cumulative_level, domain, eclose, is_pair,
    is_transset, kpair, mem, memrel, mk_set, nat_ord, node_budget, ord_value,
    pairs_of, parse_set, powerset, product, range_, rank, relation_from_pairs,
    sep_replace, singleton, trancl, union, unpair, upair_set)

S = parse_set


def test_mk_set_examples():
    assert mk_set([]) == EMPTY
    assert mk_set([EMPTY, EMPTY]) == nat_ord(1)
    assert mk_set([nat_ord(1), nat_ord(0)]) == mk_set([nat_ord(0), nat_ord(1)])


def test_hash_consing_makes_equal_sets_identical():
    assert HSet([nat_ord(2), nat_ord(1)]) is HSet([nat_ord(1), nat_ord(2), nat_ord(1)])


def test_mem_examples():
    assert mem(nat_ord(0), nat_ord(1))
    assert not mem(nat_ord(1), nat_ord(1))
    assert mem(nat_ord(2), S("{0,1,2}"))


def test_kpair_and_unpair():
    assert kpair(EMPTY, EMPTY) == S("{{0}}")
    assert unpair(S("{{0},{0,1}}")) == (nat_ord(0), nat_ord(1))
    assert unpair(S("{0}")) is None
    assert unpair(S("{{0,1},{2}}")) is None
    assert not is_pair(nat_ord(3))


def test_domain_and_range():
    assert domain(EMPTY) == EMPTY
    assert domain(S("{<0,1>}")) == S("{0}")
    assert domain(S("{<0,1>, 0}")) == S("{0}")
    assert range_(S("{<0,1>,<2,3>}")) == S("{1,3}")


def test_eclose_examples():
    assert eclose(EMPTY) == EMPTY
    assert eclose(S("{2}")) == S("{0,1,2}")
    assert eclose(S("{{1}}")) == S("{{1},1,0}")


def test_is_transset_examples():
    assert is_transset(nat_ord(3))
    assert not is_transset(S("{1}"))
    assert not is_transset(S("{0,1,{0,1,2}}"))


def test_memrel_and_trancl_examples():
    assert memrel(nat_ord(2)) == S("{<0,1>}")
    assert trancl(memrel(nat_ord(3))) == S("{<0,1>,<0,2>,<1,2>}")
    assert trancl(EMPTY) == EMPTY


def test_sep_replace_examples():
    three = nat_ord(3)
    assert sep_replace(three, lambda x: x, lambda x: True) == three
    assert sep_replace(three, singleton, lambda x: x != EMPTY) == S("{{1},{2}}")
    assert sep_replace(EMPTY, singleton, lambda x: True) == EMPTY


def test_nat_ord_and_rank():
    assert nat_ord(0) == EMPTY
    assert nat_ord(2) == S("{0,{0}}")
    for n in range(9):
        assert rank(nat_ord(n)) == n
        assert ord_value(nat_ord(n)) == n
    assert ord_value(S("{1}")) is None
    with pytest.raises(ValueError):
        nat_ord(-1)


def test_small_constructions():
    assert upair_set(nat_ord(0), nat_ord(2)) == S("{0,2}")
    assert union(S("{1,{2}}")) == S("{0,2}")
    assert len(product(nat_ord(2), nat_ord(3))) == 6
    assert len(powerset(nat_ord(3))) == 8
    assert [len(cumulative_level(n)) for n in range(5)] == [0, 1, 2, 4, 16]


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        with node_budget(10):
            powerset(nat_ord(6))


def test_budget_does_not_leak_between_calls():
    with node_budget(10 ** 5):
        eclose(nat_ord(30))
    eclose(nat_ord(30))


def test_pickle_round_trip_preserves_identity():
    x = S("{<0,1>,{2,{3}}}")
    assert pickle.loads(pickle.dumps(x)) is x


def test_concurrent_construction_is_consistent():
    out = []

    def work():
        out.append(HSet(nat_ord(k) for k in range(12)))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(x is out[0] for x in out)


@given(st.lists(hsets(3), max_size=6), st.randoms(use_true_random=False))
def test_extensionality(xs, rnd):
    ys = list(xs) + list(xs[:2])
    rnd.shuffle(ys)
    assert mk_set(xs) == mk_set(ys)
    assert O.freeze(mk_set(xs)) == frozenset(O.freeze(x) for x in xs)


@given(hsets(5, 2))
def test_canonical_children_strictly_increasing(x):
    for a, b in zip(x.elems, x.elems[1:]):
        assert a < b and not b < a


@given(hsets(4))
def test_eclose_matches_fixpoint_and_is_idempotent(x):
    e = eclose(x)
    assert O.freeze(e) == O.eclose(O.freeze(x))
    assert eclose(e) == e
    assert x.issubset(e) and is_transset(e)


@given(hsets(4), hsets(4), hsets(4), hsets(4))
def test_kpair_injective(a, b, c, d):
    if kpair(a, b) == kpair(c, d):
        assert (a, b) == (c, d)
    assert unpair(kpair(a, b)) == (a, b)
    assert O.freeze(kpair(a, b)) == O.pair(O.freeze(a), O.freeze(b))


@given(hsets(5, 2))
def test_rank_decreases_along_membership(y):
    assert rank(y) == O.rank(O.freeze(y))
    for x in y:
        assert rank(x) < rank(y)


@given(st.lists(st.tuples(st.integers(0, 7), st.integers(0, 7)), max_size=30))
def test_trancl_matches_warshall(edges):
    r = relation_from_pairs((nat_ord(a), nat_ord(b)) for a, b in edges)
    got = {(O.freeze(x), O.freeze(y)) for x, y in pairs_of(trancl(r))}
    want = O.warshall({(O.num(a), O.num(b)) for a, b in edges})
    assert got == want


@given(hsets(4))
def test_memrel_matches_oracle(a):
    got = {(O.freeze(x), O.freeze(y)) for x, y in pairs_of(memrel(a))}
    assert got == O.memrel(O.freeze(a))
