import random

import pytest
from hypothesis import given, strategies as st

import oracles as O
from hfforcing import (
    EMPTY, FiniteForcingNotion, HFError, HSet, OutsideCarrier, antichain_notion,
    chain_notion, closure_compat_filter, cohen_condition, cohen_dense, cohen_dict,
    cohen_notion, compat_in, dense, dense_below, increasing, is_filter, kpair,
    nat_ord, relation_from_pairs, trivial_notion, upclosure,
    validate_forcing_notion)
from hfforcing.order import dense_witness
from hfforcing.randgen import random_notion, random_subset

n = nat_ord
CHAIN3 = chain_notion(3)
COHEN = cohen_notion()


def test_builtin_notions_are_valid():
    for f in (CHAIN3, chain_notion(1), antichain_notion(3), trivial_notion()):
        assert validate_forcing_notion(f) == []
    assert CHAIN3.one == n(2)
    assert CHAIN3.leq(n(0), n(2)) and not CHAIN3.leq(n(2), n(0))


def test_missing_reflexive_pair_is_reported():
    leq = CHAIN3.relation.difference(HSet([kpair(n(0), n(0))]))
    bad = FiniteForcingNotion(CHAIN3.carrier, leq, n(2))
    report = validate_forcing_notion(bad)
    assert [(v.axiom, v.witness) for v in report] == [("reflexivity", (n(0),))]


def test_other_violations():
    carrier = HSet([n(0), n(1)])
    no_top = FiniteForcingNotion(carrier, relation_from_pairs(
        [(n(0), n(0)), (n(1), n(1))]), n(1))
    assert [v.axiom for v in validate_forcing_notion(no_top)] == ["one_max"]
    outside = FiniteForcingNotion(carrier, relation_from_pairs(
        [(n(0), n(0)), (n(1), n(1))]), n(5))
    assert "one_in_P" in [v.axiom for v in validate_forcing_notion(outside)]
    c = HSet([n(0), n(1), n(2)])
    nontrans = FiniteForcingNotion(c, relation_from_pairs(
        [(x, x) for x in c] + [(n(0), n(1)), (n(1), n(2))]), n(2))
    kinds = {v.axiom for v in validate_forcing_notion(nontrans)}
    assert kinds == {"transitivity", "one_max"}


def test_cohen_prefix_is_valid():
    assert validate_forcing_notion(COHEN, bound=50) == []
    conds = COHEN.conditions(50)
    assert len(set(conds)) == 50 and conds[0] == EMPTY
    assert all(cohen_dict(p) is not None for p in conds)


def test_compat_examples():
    assert compat_in(CHAIN3, n(0), n(2))
    p, q = cohen_condition({0: 0}), cohen_condition({0: 1})
    assert not compat_in(COHEN, p, q)
    assert compat_in(COHEN, p, cohen_condition({3: 1}))
    for x in CHAIN3.carrier:
        assert compat_in(CHAIN3, x, x)
    with pytest.raises(OutsideCarrier):
        compat_in(CHAIN3, n(0), n(7))


def test_cohen_incompatibility_by_bounded_search():
    # no extension of bounded domain lies below both conditions
    p, q = cohen_condition({0: 0}), cohen_condition({0: 1})
    below_p = [r for r in COHEN.conditions(3 ** 5) if COHEN.leq(r, p)]
    assert below_p and not any(COHEN.leq(r, q) for r in below_p)


def test_dense_examples():
    assert dense(CHAIN3, CHAIN3.carrier)
    assert dense(CHAIN3, HSet([n(0)]))
    assert not dense_below(CHAIN3, HSet([n(2)]), n(0))
    assert dense_below(CHAIN3, HSet([n(0)]), n(1))
    assert dense_witness(CHAIN3, HSet([n(1)])) == n(0)


def test_dense_on_cohen_needs_a_bound():
    with pytest.raises(HFError):
        dense(COHEN, cohen_dense(0))
    for k in range(4):
        assert dense(COHEN, cohen_dense(k), bound=40)
    assert not dense(COHEN, lambda q: False, bound=5, search_limit=50)


def test_filter_examples():
    assert is_filter(CHAIN3, HSet([n(1), n(2)]))
    assert not is_filter(CHAIN3, HSet([n(0), n(2)]))
    assert is_filter(CHAIN3, EMPTY)
    anti = antichain_notion(2)
    assert not is_filter(anti, anti.carrier)
    assert is_filter(anti, HSet([EMPTY, n(1)]))


def test_upclosure_examples():
    assert upclosure(CHAIN3, HSet([n(1)])) == HSet([n(1), n(2)])
    assert upclosure(CHAIN3, EMPTY) == EMPTY
    assert upclosure(CHAIN3, CHAIN3.carrier) == CHAIN3.carrier
    p = cohen_condition({0: 1, 2: 0})
    assert len(upclosure(COHEN, HSet([p]))) == 4
    assert increasing(COHEN, upclosure(COHEN, HSet([p])))


def test_closure_compat_filter_examples():
    out = closure_compat_filter(CHAIN3, HSet([n(0), n(1)]))
    assert out.ok and out.filter == CHAIN3.carrier
    chain = HSet([cohen_condition({}), cohen_condition({0: 1}),
                  cohen_condition({0: 1, 1: 0})])
    out = closure_compat_filter(COHEN, chain)
    assert out.ok and is_filter(COHEN, out.filter)
    p, q = cohen_condition({0: 0}), cohen_condition({0: 1})
    out = closure_compat_filter(COHEN, HSet([p, q]))
    assert not out.ok and set(out.incompatible) == {p, q}
    assert closure_compat_filter(CHAIN3, EMPTY).filter == EMPTY
    with pytest.raises(OutsideCarrier):
        closure_compat_filter(CHAIN3, HSet([n(4)]))


seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds)
def test_random_notions_match_oracles(seed):
    rng = random.Random(seed)
    f = random_notion(rng, rng.randint(1, 8))
    assert validate_forcing_notion(f) == []
    P, le = O.freeze(f.carrier), O.leq_table(f)
    d = random_subset(rng, f.carrier.elems)
    assert dense(f, d) == O.dense(P, le, O.freeze(d))
    assert dense(f, f.carrier)
    g = random_subset(rng, f.carrier.elems)
    assert is_filter(f, g) == O.is_filter(P, le, O.freeze(g))
    assert O.freeze(upclosure(f, g)) == O.upclosure(P, le, O.freeze(g))
    u = upclosure(f, g)
    assert upclosure(f, u) == u and increasing(f, u)
    if dense(f, d):
        assert all(dense_below(f, d, q) for q in f.carrier)
    x, y = rng.choice(f.carrier.elems), rng.choice(f.carrier.elems)
    assert compat_in(f, x, y) == O.compat_within(le, P, O.freeze(x), O.freeze(y))


@given(seeds)
def test_closure_compat_filter_on_random_sets(seed):
    rng = random.Random(seed)
    f = random_notion(rng, rng.randint(1, 8))
    a = random_subset(rng, f.carrier.elems)
    out = closure_compat_filter(f, a)
    pairwise = all(compat_in(f, p, q, within=a) for p in a for q in a)
    assert out.ok == pairwise
    if out.ok:
        assert is_filter(f, out.filter) and increasing(f, out.filter)
        assert O.is_filter(O.freeze(f.carrier), O.leq_table(f), O.freeze(out.filter))
