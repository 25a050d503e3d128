import random

import pytest
from hypothesis import given, strategies as st

import oracles as O
from hfforcing import (
    EMPTY, ForcingData, HSet, LocaleError, OutsideCarrier, PreconditionError,
    antichain_notion, chain_notion, check, check_extra_assms, eclose, edrel, g_dot, gen_ext, kpair,
    memrel, nat_ord, pairing_axiom_instance, pairing_witness, pairs_of, parse_set,
    trancl, trans_gen_ext_check, trivial_notion, upair_ax_gen_ext, val, val_g_dot,
    wf_check)
from hfforcing.randgen import random_forcing_data, random_hset, random_subset

n = nat_ord
CHAIN2 = chain_notion(2)
FD = ForcingData.minimal(CHAIN2)
ONE = CHAIN2.one


def test_edrel_examples():
    a = parse_set("{0, {<0,1>}}")
    assert edrel(a) == HSet([kpair(n(0), parse_set("{<0,1>}"))])
    assert edrel(EMPTY) == EMPTY


def test_wf_check_examples():
    assert not wf_check(parse_set("{<0,0>}"))
    assert wf_check(memrel(n(5)))
    assert not wf_check(parse_set("{<0,1>,<1,2>,<2,0>}"))
    assert wf_check(EMPTY)


def test_val_examples():
    g = HSet([ONE])
    assert val(FD, g, EMPTY) == EMPTY
    tau = HSet([kpair(EMPTY, ONE)])
    assert val(FD, g, tau) == n(1)
    assert val(FD, HSet([n(0)]), tau) == EMPTY
    # non-pairs and pairs with conditions outside P contribute nothing
    junk = HSet([n(2), kpair(EMPTY, n(7))])
    assert val(FD, g, junk) == EMPTY


def test_val_requires_subset_of_p():
    with pytest.raises(OutsideCarrier):
        val(FD, HSet([n(5)]), EMPTY)


def test_val_model_mode_agrees():
    for g in (HSet([ONE]), CHAIN2.carrier, EMPTY):
        for tau in FD.m:
            assert val(FD, g, tau) == val(FD, g, tau, over="model")
    with pytest.raises(PreconditionError):
        val(FD, EMPTY, n(9), over="model")
    with pytest.raises(ValueError):
        val(FD, EMPTY, EMPTY, over="nowhere")


def test_check_examples():
    assert check(FD, EMPTY) == EMPTY
    assert check(FD, n(1)) == HSet([kpair(EMPTY, ONE)])
    assert check(FD, n(2)) == HSet([kpair(check(FD, n(0)), ONE),
                                    kpair(check(FD, n(1)), ONE)])


def test_gen_ext_on_chain2():
    g = HSet([ONE])
    ext = gen_ext(FD, g)
    assert ext.value == HSet(val(FD, g, tau) for tau in FD.m)
    for x in ext.value:
        tau = ext.name_of(x)
        assert tau in FD.m and val(FD, g, tau) == x
    assert ext.name_of(n(9)) is None
    assert trans_gen_ext_check(FD, g).ok


def test_trivial_notion_extension():
    fd = ForcingData.minimal(trivial_notion())
    assert gen_ext(fd, fd.P).value == n(2)
    assert trans_gen_ext_check(fd, fd.P)


def test_locale_violations_are_caught():
    m = FD.m.with_(HSet([n(5)]))
    with pytest.raises(LocaleError) as info:
        ForcingData(m, CHAIN2)
    assert "Transset(M)" in str(info.value)
    with pytest.raises(LocaleError):
        ForcingData(HSet([EMPTY]), trivial_notion())


def test_g_dot_examples():
    assert g_dot(FD) == HSet([kpair(check(FD, n(0)), n(0)),
                              kpair(check(FD, n(1)), n(1))])
    for g in (HSet([n(1)]), HSet([n(0), n(1)])):
        assert val_g_dot(FD, g) == g
    # without one in G the identity can fail
    anti = ForcingData.minimal(antichain_notion(2))
    assert val_g_dot(anti, HSet([n(1)])) == HSet([EMPTY])


def test_pairing_witness_examples():
    g = HSet([ONE])
    pw = pairing_witness(FD, g, EMPTY, EMPTY)
    assert pw.sigma == HSet([kpair(EMPTY, ONE)]) and pw.value == n(1)
    assert not pw.sigma_in_m
    with pytest.raises(PreconditionError):
        pairing_witness(FD, HSet([n(0)]), EMPTY, EMPTY)
    with pytest.raises(PreconditionError):
        pairing_witness(FD, g, n(9), EMPTY)


def test_check_extra_assms_report():
    fd = ForcingData.minimal(trivial_notion())
    rep = check_extra_assms(fd)
    assert rep.check_in_m[EMPTY]
    assert not rep.sats_upair_ax and rep.upair_witness is not None
    assert set(rep.check_in_m) == set(fd.m.elems)
    lines = rep.lines()
    assert [line.split(":")[0] for line in lines] == [
        "check_in_M", "sats_upair_ax", "repl_check_pair", "G_dot_in_M"]
    assert all(line.split(": ")[1][:4] in ("PASS", "FAIL") for line in lines)


def test_pairing_axiom_instance_is_conditional():
    g = HSet([ONE])
    v = pairing_axiom_instance(FD, g, EMPTY, ONE)
    assert v.ok and v.witness[0] == "vacuous"
    v = pairing_axiom_instance(FD, g, EMPTY, ONE, sats_upair=True)
    assert v.ok == (pairing_witness(FD, g, EMPTY, ONE).value in gen_ext(FD, g).value)


def test_upair_in_extension_reported():
    assert not upair_ax_gen_ext(FD, HSet([ONE])).ok


# -- properties -----------------------------------------------------------------

seeds = st.integers(0, 2 ** 32 - 1)


@given(seeds)
def test_edrel_is_wellfounded_and_inside_memrel_closure(seed):
    rng = random.Random(seed)
    a = random_hset(rng, 4)
    e = edrel(a)
    assert wf_check(e)
    assert e.issubset(trancl(memrel(eclose(a))))
    got = {(O.freeze(x), O.freeze(y)) for x, y in pairs_of(e)}
    assert got == O.edrel(O.freeze(a))
    assert not O.has_cycle(got)


@given(seeds)
def test_val_matches_def_val_oracle(seed):
    rng = random.Random(seed)
    fd = random_forcing_data(rng)
    g = random_subset(rng, fd.P.elems)
    tau = rng.choice(fd.m.elems)
    want = O.def_val(O.freeze(fd.P), O.freeze(g), O.freeze(tau))
    assert O.freeze(val(fd, g, tau)) == want


@given(seeds)
def test_valcheck(seed):
    rng = random.Random(seed)
    fd = random_forcing_data(rng)
    g = random_subset(rng, fd.P.elems, [fd.one])
    y = random_hset(rng, 4)
    assert val(fd, g, check(fd, y)) == y
    assert O.freeze(check(fd, y)) == O.check_name(O.freeze(fd.one), O.freeze(y))


@given(seeds)
def test_valsigma(seed):
    rng = random.Random(seed)
    fd = random_forcing_data(rng)
    g = random_subset(rng, fd.P.elems, [fd.one])
    tau, rho = rng.choice(fd.m.elems), rng.choice(fd.m.elems)
    pw = pairing_witness(fd, g, tau, rho)
    assert pw.value == HSet([val(fd, g, tau), val(fd, g, rho)])
    assert pw.sigma_in_m == (pw.sigma in fd.m)
