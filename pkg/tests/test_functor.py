import random

import pytest
from hypothesis import given, strategies as st

from initalg import finset as fs
from initalg import functor as fk
from initalg.canon import Term
from initalg.errors import CapExceeded, LawViolation

S = fs.FinSetObj
NAT = fk.one_plus_x()


def functors():
    leaves = st.sampled_from([fk.Id(), fk.Const(S(["k"])), fk.Const(S(["k", "l"])), NAT,
                              fk.const_plus_x(["b1", "b2"])])
    return st.recursive(
        leaves,
        lambda inner: st.one_of(
            st.builds(fk.Sum, inner, inner),
            st.builds(fk.Product, inner, inner),
            st.builds(fk.Compose, inner, inner),
            st.just(fk.FinPowerset()),
            st.just(fk.NonemptyFinPowerset()),
            st.builds(fk.Compose, st.just(fk.FinPowerset()), inner)),
        max_leaves=3)


@st.composite
def maps(draw, n_dom=3, n_cod=3, injective=False):
    a = draw(st.integers(0, n_dom))
    b = draw(st.integers(a if injective else 0, n_cod))
    A, B = S(range(a)), S([f"y{i}" for i in range(b)])
    if b == 0 and a > 0:
        A = S()
    if injective:
        ys = draw(st.permutations(list(B)))[:len(A)]
    else:
        ys = [draw(st.sampled_from(list(B))) for _ in A]
    return fs.FinFn(A, B, dict(zip(A, ys)))


def test_apply_obj_examples():
    X = S(["a", "b"])
    assert fk.apply_obj(fk.Id(), X) == X
    NX = fk.apply_obj(NAT, X)
    assert set(NX) == {Term("Z"), Term("S", None, ("a",)), Term("S", None, ("b",))}
    assert set(fk.apply_obj(fk.FinPowerset(), S(["a"]))) == {Term("set"), Term("set", None, ("a",))}


def test_apply_mor_examples():
    X, Y = S(["a", "b"]), S(["c"])
    f = fs.FinFn(X, Y, {"a": "c", "b": "c"})
    Ff = fk.apply_mor(NAT, f)
    assert Ff(Term("Z")) == Term("Z")
    assert Ff(Term("S", None, ("a",))) == Term("S", None, ("c",)) == Ff(Term("S", None, ("b",)))
    Pf = fk.apply_mor(fk.FinPowerset(), f)
    assert Pf(Term("set", None, ("a", "b"))) == Term("set", None, ("c",))
    for F in (fk.Id(), NAT, fk.FinPowerset()):
        FX = fk.apply_obj(F, X)
        assert fk.apply_mor(F, fs.identity(X)) == fs.identity(FX)


def test_cap_is_enforced():
    with pytest.raises(CapExceeded):
        fk.apply_obj(fk.FinPowerset(), S(range(30)))


@given(functors(), st.integers(0, 3))
def test_size_formula_matches_enumeration(F, n):
    if F.size(n) > 5000:
        return
    FX = fk.apply_obj(F, S(range(n)))
    assert len(FX) == F.size(n)
    for t in FX:
        assert set(F.support(t)) <= set(range(n))


@given(functors(), maps(), st.data())
def test_functor_laws(F, f, data):
    g_images = {y: data.draw(st.sampled_from(["z0", "z1"])) for y in f.cod}
    g = fs.FinFn(f.cod, S(["z0", "z1"]), g_images)
    if max(F.size(len(X)) for X in (f.dom, f.cod, g.cod)) > 3000:
        return
    assert fk.check_functor_laws(F, [(f, g)]).passed


@given(functors(), maps(injective=True))
def test_mono_preservation(F, m):
    if F.size(len(m.cod)) > 3000:
        return
    assert fk.check_mono_preservation(F, [m]).passed


def test_compose_powerset_container_laws():
    rng = random.Random(7)
    F = fk.Compose(fk.FinPowerset(), NAT)
    samples = []
    for _ in range(20):
        A, B, C = S(range(rng.randint(0, 3))), S("pqr"[:rng.randint(1, 3)]), S(["u", "v"])
        f = fs.FinFn(A, B, {x: rng.choice(B.elems) for x in A})
        g = fs.FinFn(B, C, {y: rng.choice(C.elems) for y in B})
        samples.append((f, g))
    cert = fk.check_functor_laws(F, samples)
    assert cert.passed and cert.witnesses["pairs_checked"] == 20


def test_const_acts_as_identity():
    K = fk.Const(S(["s", "t"]))
    m = fs.inclusion([1], S([1, 2]))
    assert fk.apply_mor(K, m) == fs.identity(S(["s", "t"]))


class _DropsArgs(fk.Container):
    """Negative control: forgets the argument of every successor."""

    def act(self, f, t):
        return Term("Z") if t.args else t


class _CollapsesNonIdentities(fk.Container):
    """Negative control: honest on identities, collapses other maps to ``Z``."""

    def act(self, f, t):
        out = super().act(f, t)
        return out if out == t else Term("Z")


def test_corrupted_action_breaks_identity_law():
    F = _DropsArgs(NAT.constructors)
    f = fs.identity(S(["a"]))
    with pytest.raises(LawViolation) as e:
        fk.check_functor_laws(F, [(f, f)])
    assert e.value.law == "identity"


def test_corrupted_action_breaks_composition_or_monos():
    F = _CollapsesNonIdentities(NAT.constructors)
    X, Y = S(["a", "b"]), S(["c", "d"])
    f = fs.FinFn(X, Y, {"a": "c", "b": "d"})
    g = fs.FinFn(Y, X, {"c": "a", "d": "b"})
    with pytest.raises(LawViolation) as e:
        fk.check_functor_laws(F, [(f, g)])
    assert e.value.law == "composition"
    cert = fk.check_mono_preservation(F, [f])
    assert cert.outcome == "Fail" and cert.counterexamples
