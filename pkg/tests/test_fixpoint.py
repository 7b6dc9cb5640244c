import random

import pytest
from hypothesis import given, strategies as st

import oracles
from initalg import fixpoint as fp
from initalg import poset as po
from initalg.errors import (CapExceeded, NoBottom, NotACompleteLattice, NotStrict,
                            SquareDoesNotCommute, UnitNotBottom)

C3 = po.chain(0, 1, 2)
C2 = po.chain(0, 1)
SUCC = po.MonotoneEndo(C3, {0: 1, 1: 2, 2: 2})


def diamond():
    return po.validate_poset(["⊥", "a", "b", "⊤"],
                             [("⊥", "a"), ("⊥", "b"), ("⊥", "⊤"), ("a", "⊤"), ("b", "⊤")])


DIAMOND_F = po.MonotoneEndo(diamond(), {"⊥": "a", "a": "a", "b": "⊤", "⊤": "⊤"})


@st.composite
def pointed_endos(draw, max_size=7):
    n = draw(st.integers(0, max_size - 1))
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    P = po.add_bottom(po.random_poset(n, rng, density=draw(st.sampled_from([0.2, 0.5, 0.8]))))
    return po.MonotoneEndo(P, po.random_monotone_map(P, P, rng))


# -- worked examples -----------------------------------------------------------------------

def test_kleene_examples():
    r = fp.kleene_lfp(SUCC)
    assert (r.value, r.stages) == (2, 2)
    assert r.trace == (0, 1, 2)
    ident = po.MonotoneEndo(C3, {x: x for x in C3})
    assert (fp.kleene_lfp(ident).value, fp.kleene_lfp(ident).stages) == (0, 0)
    assert fp.kleene_lfp(DIAMOND_F).value == "a"


def test_zermelo_examples():
    r = fp.zermelo_lfp(SUCC)
    assert (r.value, r.stages) == (2, 2)
    assert fp.zermelo_lfp(po.MonotoneEndo(C3, {x: x for x in C3})).stages == 0
    r = fp.zermelo_lfp(po.MonotoneEndo(C2, {0: 1, 1: 1}))
    assert (r.value, r.stages) == (1, 1)


def test_tarski_examples():
    assert fp.tarski_lfp(DIAMOND_F) == "a"
    assert fp.tarski_lfp(po.MonotoneEndo(C3, {x: x for x in C3})) == 0
    D = diamond()
    assert fp.tarski_lfp(po.MonotoneEndo(D, {x: "⊤" for x in D})) == "⊤"


def test_tarski_refuses_non_lattices():
    V = po.add_bottom(po.antichain("l", "r"))
    with pytest.raises(NotACompleteLattice):
        fp.tarski_lfp(po.MonotoneEndo(V, {x: x for x in V}))


def test_pataraia_closure_examples():
    assert fp.pataraia_closure(SUCC) == {0, 1, 2}
    assert fp.pataraia_closure(po.MonotoneEndo(C3, {x: x for x in C3})) == {0}
    assert fp.pataraia_closure(DIAMOND_F) == {"⊥", "a"}


def test_pataraia_lfp_examples():
    assert fp.pataraia_lfp(SUCC).value == 2
    assert fp.pataraia_lfp(po.MonotoneEndo(C3, {x: x for x in C3})).value == 0
    assert fp.pataraia_lfp(DIAMOND_F).value == "a"


def test_monoid_two_chain_constant():
    f = po.MonotoneEndo(C2, {0: 1, 1: 1})
    M = fp.inflationary_monoid(C2).verify()
    assert set(M.carrier) == {(0, 1), (1, 1)}
    assert fp.monoid_top_zero(M) == (1, 1)
    r = fp.pataraia_via_monoid(f)
    assert r.value == 1 and r.stages == 2


def test_monoid_identity_and_successor():
    r = fp.pataraia_via_monoid(po.MonotoneEndo(C3, {x: x for x in C3}))
    assert r.value == 0 and r.stages == 1          # T = {0}, M = {id}
    assert fp.pataraia_via_monoid(SUCC).value == 2


def test_monoid_top_zero_examples():
    single = fp.OrderedMonoid(po.chain("e"), lambda a, b: "e", "e").verify()
    assert fp.monoid_top_zero(single) == "e"
    mx = fp.OrderedMonoid(C2, max, 0).verify()
    assert fp.monoid_top_zero(mx) == 1


def test_monoid_unit_must_be_bottom():
    mn = fp.OrderedMonoid(C2, min, 1).verify()
    with pytest.raises(UnitNotBottom):
        fp.monoid_top_zero(mn)


def test_monoid_cap():
    P = po.chain(*range(7))
    f = po.MonotoneEndo(P, {i: min(i + 1, 6) for i in P})
    with pytest.raises(CapExceeded):
        fp.pataraia_via_monoid(f)


def test_fixed_point_subdcpo_examples():
    S = fp.fixed_point_subdcpo(po.MonotoneEndo(C3, {x: x for x in C3}))
    assert S == C3
    assert list(fp.fixed_point_subdcpo(SUCC)) == [2]
    D = diamond()
    f = po.MonotoneEndo(D, {"⊥": "a", "a": "a", "b": "⊤", "⊤": "⊤"})
    S = fp.fixed_point_subdcpo(f)
    assert set(S) == {"a", "⊤"} and S.leq("a", "⊤")


def test_mu_transfer_examples():
    ident = po.identity_map(C3)
    assert fp.check_mu_transfer(SUCC, SUCC, ident).passed
    g = po.MonotoneEndo(C2, {0: 1, 1: 1})
    h = po.PosetMap(C3, C2, {0: 0, 1: 1, 2: 1})
    cert = fp.check_mu_transfer(SUCC, g, h)
    assert cert.passed and cert.witnesses["h_mu_f"] == 1 == cert.witnesses["mu_g"]


def test_mu_transfer_preconditions():
    g = po.MonotoneEndo(C2, {0: 1, 1: 1})
    with pytest.raises(NotStrict):
        fp.check_mu_transfer(SUCC, g, po.PosetMap(C3, C2, {0: 1, 1: 1, 2: 1}))
    ident = po.MonotoneEndo(C2, {0: 0, 1: 1})
    with pytest.raises(SquareDoesNotCommute):
        fp.check_mu_transfer(SUCC, ident, po.PosetMap(C3, C2, {0: 0, 1: 1, 2: 1}))


def test_no_bottom():
    A = po.antichain("a", "b")
    f = po.MonotoneEndo(A, {"a": "a", "b": "b"})
    for engine in (fp.kleene_lfp, fp.zermelo_lfp, fp.pataraia_lfp):
        with pytest.raises(NoBottom):
            engine(f)


# -- properties ---------------------------------------------------------------------------

@given(pointed_endos())
def test_engines_agree_with_scan(f):
    want = oracles.lfp(f.poset, f)
    assert fp.kleene_lfp(f).value == want
    assert fp.zermelo_lfp(f).value == want
    assert fp.pataraia_lfp(f).value == want
    assert fp.lfp_scan(f) == want
    if oracles.is_complete_lattice(f.poset):
        assert fp.tarski_lfp(f) == want


@given(pointed_endos(max_size=6))
def test_closure_is_least_closed_subset(f):
    P = f.poset
    T = fp.pataraia_closure(f)
    bot = oracles.bottom_of(P)

    def closed(S):
        S = set(S)
        return (bot in S and all(f(x) in S for x in S)
                and all(oracles.join_of(P, D) in S for D in oracles.subsets(S)
                        if oracles.directed(P, D)))

    assert closed(T)
    for S in oracles.subsets(P):
        if closed(S):
            assert T <= set(S)


@given(pointed_endos(max_size=6))
def test_zermelo_iterates_form_a_chain_below_every_fixed_point(f):
    P = f.poset
    r = fp.zermelo_lfp(f)
    assert r.stages <= len(P)
    for a, b in zip(r.trace, r.trace[1:]):
        assert P.leq(a, b) and a != b
    for x in f.fixed_points():
        assert all(P.leq(t, x) for t in r.trace)


@given(pointed_endos(max_size=5))
def test_fixed_points_form_a_subdcpo(f):
    S = fp.fixed_point_subdcpo(f)
    P = f.poset
    assert set(S) == {x for x in P if f(x) == x}
    for D in oracles.subsets(S):
        if oracles.directed(S, D):
            assert oracles.join_of(S, D) is not None
