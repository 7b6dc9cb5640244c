import itertools

import pytest

from initalg import coalgebra as co
from initalg import finset as fs
from initalg import functor as fk
from initalg import initial as ia
from initalg.canon import Term
from initalg.errors import NotConverged, NotMono

S_ = fs.FinSetObj
NAT = fk.one_plus_x()
B = S_(["b1", "b2"])


def pfp(F, A, m):
    A = S_(A)
    return ia.PreFixedPoint(F, A, fs.FinFn(fk.apply_obj(F, A), A, m))


def test_chain_examples():
    s = ia.initial_chain(fk.Const(B), 5)
    assert s.converged and s.stage == 1
    assert s.objects[1] == B and s.connectors[1] == fs.identity(B)
    s = ia.initial_chain(fk.Id(), 5)
    assert s.converged and s.stage == 0 and len(s.objects[0]) == 0
    s = ia.initial_chain(NAT, 5)
    assert not s.converged and s.sizes() == [0, 1, 2, 3, 4, 5]


def test_chain_to_initial_algebra_examples():
    r = ia.chain_to_initial_algebra(ia.initial_chain(fk.Const(B), 5))
    assert r.carrier == B and r.iota_inv == fs.identity(B)
    r = ia.chain_to_initial_algebra(ia.initial_chain(fk.Id(), 5))
    assert len(r.carrier) == 0 and r.iota_inv.graph == {}
    with pytest.raises(NotConverged):
        ia.chain_to_initial_algebra(ia.initial_chain(NAT, 5))


def test_chain_cap_is_exhausted_not_an_error():
    s = ia.initial_chain(fk.FinPowerset(), 10, cap=100)
    assert not s.converged and "cap" in s.reason
    assert s.sizes() == [0, 1, 2, 4, 16]


def test_canonical_cocone_examples():
    a = co.algebra(NAT, range(6), lambda t: 0 if t == Z else min(t.args[0] + 1, 5))
    alphas = ia.canonical_cocone(NAT, a, 3)
    assert alphas[0].graph == {}
    assert sorted(alphas[3].graph.values()) == [0, 1, 2]
    idB = co.algebra(fk.Const(B), B, {"b1": "b1", "b2": "b2"})
    for al in ia.canonical_cocone(fk.Const(B), idB, 4)[1:]:
        assert al == fs.identity(B)


Z = Term("Z")


def test_subobject_examples():
    r = ia.initial_algebra_via_subobjects(pfp(fk.Id(), [0, 1], {0: 0, 1: 1}))
    assert len(r.carrier) == 0
    p = pfp(fk.Const(B), ["b1", "b2", "junk"], {"b1": "b1", "b2": "b2"})
    r = ia.initial_algebra_via_subobjects(p)
    assert r.carrier == B and r.iota == fs.identity(B)
    assert r.carrier != p.carrier
    sq = fk.Product(fk.Id(), fk.Id())
    p = pfp(sq, [0], {Term("pair", None, (0, 0)): 0})
    assert len(ia.initial_algebra_via_subobjects(p).carrier) == 0


def test_engines_give_the_same_subobject_result():
    p = pfp(fk.Const(B), [0, 1, 2], {"b1": 2, "b2": 0})
    a = ia.initial_algebra_via_subobjects(p, "pataraia")
    b = ia.initial_algebra_via_subobjects(p, "zermelo")
    assert a.carrier == b.carrier == S_([0, 2]) and a.iota == b.iota


def test_non_injective_structure_is_rejected():
    with pytest.raises(NotMono):
        pfp(fk.Const(B), [0], {"b1": 0, "b2": 0})


def test_stage_identity_examples():
    p = pfp(fk.Const(B), ["b1", "b2", "junk"], {"b1": "b1", "b2": "b2"})
    cert = ia.verify_chain_stage_identity(p, 3)
    assert cert.passed
    assert cert.witnesses["iterates"][0] == {"subset": []}
    assert cert.witnesses["iterates"][1] == {"subset": ["b1", "b2"]}
    cert = ia.verify_chain_stage_identity(pfp(fk.Id(), [0], {0: 0}), 4)
    assert cert.passed and all(it == {"subset": []} for it in cert.witnesses["iterates"])


def test_cross_validate_examples():
    p = pfp(fk.Const(B), ["b1", "b2", "junk"], {"b1": "b1", "b2": "b2"})
    cert = ia.cross_validate(fk.Const(B), p, 6)
    assert cert.passed
    assert cert.witnesses["phi"] == [["b1", "b1"], ["b2", "b2"]]
    assert ia.cross_validate(fk.Id(), pfp(fk.Id(), [0, 1], {0: 1, 1: 0}), 6).passed
    sq = fk.Product(fk.Id(), fk.Id())
    assert ia.cross_validate(sq, pfp(sq, [0], {Term("pair", None, (0, 0)): 0}), 6).passed


def test_cross_validate_reports_non_convergence():
    K = fk.Const(B)
    p = pfp(K, ["b1", "b2"], {"b1": "b1", "b2": "b2"})
    cert = ia.cross_validate(K, p, 1)
    assert cert.outcome == "Fail" and cert.witnesses["chain_sizes"] == [0, 2]


def test_chain_certificate():
    cert = ia.chain_certificate(NAT, 5)
    assert cert.outcome == "Unknown" and cert.notes[0].startswith("Exhausted")
    cert = ia.chain_certificate(fk.Const(B), 5)
    assert cert.passed and cert.witnesses["stage"] == 1


def test_isos_propagate_after_convergence():
    F = fk.Sum(fk.Const(B), fk.Product(fk.Id(), fk.Const(S_())))
    s = ia.initial_chain(F, 6)
    assert s.converged
    W, w = ia.extend_chain(s, 3)
    for f in w[s.stage:]:
        assert fs.is_iso(f)[0]


def test_every_injective_structure_on_small_carriers():
    K = fk.Const(S_(["p", "q"]))
    for n in range(2, 5):
        A = list(range(n))
        for images in itertools.permutations(A, 2):
            p = pfp(K, A, dict(zip(["p", "q"], images)))
            assert ia.cross_validate(K, p, 6).passed
            r = ia.initial_algebra_via_subobjects(p)
            assert r.carrier.as_set() == set(images)
