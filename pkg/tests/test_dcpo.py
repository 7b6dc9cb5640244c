import itertools
import random

import pytest
from hypothesis import given, strategies as st

import oracles
from initalg import dcpo as dc
from initalg import poset as po
from initalg.errors import NotAnEmbedding, NotDirected, NotLocallyMonotone, NoBottom

C1 = dc.ONE
C2 = po.chain("⊥", "⊤")
C3 = po.chain("⊥", "m", "⊤")
VEE = po.add_bottom(po.antichain("a", "b"))


@st.composite
def pointed_posets(draw, max_size=4):
    n = draw(st.integers(0, max_size - 1))
    rng = random.Random(draw(st.integers(0, 2 ** 32)))
    return po.add_bottom(po.random_poset(n, rng, density=draw(st.sampled_from([0.3, 0.6]))))


# -- hom posets --------------------------------------------------------------------------------

def test_hom_examples():
    assert len(dc.hom_poset(C1, C1).poset) == 1
    H = dc.hom_poset(C2, C2)
    assert len(H.poset) == 3 and len(H.poset.covers()) == 2       # a 3-chain
    H = dc.hom_poset(C2, VEE)
    assert len(H.poset) == len(oracles.monotone_maps(C2, VEE)) == 5


def test_hom_requires_bottom():
    with pytest.raises(NoBottom):
        dc.hom_poset(po.antichain("a", "b"), C2)


@given(pointed_posets(3), pointed_posets(3))
def test_hom_is_enriched_and_pointwise(A, B):
    H = dc.hom_poset(A, B)
    assert len(H.poset) == len(oracles.monotone_maps(A, B))
    S = dc.hom_poset(A, B, strict=True)
    bot = oracles.bottom_of(B)
    assert len(S.poset) == sum(m[oracles.bottom_of(A)] == bot for m in oracles.monotone_maps(A, B))


# -- embeddings ------------------------------------------------------------------------------

def test_find_projection_examples():
    e = po.identity_map(C3)
    assert dc.find_projection(e).proj == e
    e = po.PosetMap(C2, C3, {"⊥": "⊥", "⊤": "⊤"})
    assert dc.find_projection(e).proj.map == {"⊥": "⊥", "m": "⊥", "⊤": "⊤"}
    assert dc.find_projection(po.PosetMap(C2, C3, {"⊥": "⊥", "⊤": "⊥"})) is None


@given(pointed_posets(4), pointed_posets(4), st.integers(0, 2 ** 32))
def test_projection_candidate_agrees_with_search(A, B, seed):
    m = po.random_monotone_map(A, B, random.Random(seed))
    e = po.PosetMap(A, B, m)
    found = dc.find_projection(e)
    cand = dc.projection_candidate(e)
    assert (found is None) == (cand is None)
    if found:
        assert found.proj == cand


# -- the basic lemma -----------------------------------------------------------------------------

def _two_chain_diagram():
    incl = po.PosetMap(C2, C3, {"⊥": "⊥", "⊤": "⊤"})
    return dc.EmbeddingDiagram(po.chain(0, 1), {0: C2, 1: C3}, {(0, 1): incl}), incl


def test_basic_lemma_single_object():
    D = dc.EmbeddingDiagram(po.chain(0), {0: C3}, {})
    cert = dc.verify_basic_lemma(D, C3, {0: po.identity_map(C3)})
    assert cert.passed and cert.witnesses["agree"]


def test_basic_lemma_two_chain():
    D, incl = _two_chain_diagram()
    cert = dc.verify_basic_lemma(D, C3, {0: incl, 1: po.identity_map(C3)})
    assert cert.passed
    # listed in the canonical element order of C3
    assert dict(zip(C3, cert.witnesses["side2"]["idempotents"]["0"])) == {"⊥": "⊥", "m": "⊥", "⊤": "⊤"}


def test_basic_lemma_non_universal_cocone():
    D, incl = _two_chain_diagram()
    C4 = po.chain("⊥", "m", "n", "⊤")
    into = po.PosetMap(C3, C4, {"⊥": "⊥", "m": "m", "⊤": "⊤"})
    cert = dc.verify_basic_lemma(D, C4, {0: incl.then(into), 1: into})
    assert cert.outcome == "Fail"
    assert cert.witnesses["side1"]["kind"] == "two_factorizations"
    assert cert.witnesses["side2"]["reason"] == "join is not the identity"


def test_basic_lemma_rejects_non_embedding_connectors():
    f = po.PosetMap(C3, C2, {"⊥": "⊥", "m": "⊤", "⊤": "⊤"})
    D = dc.EmbeddingDiagram(po.chain(0, 1), {0: C3, 1: C2}, {(0, 1): f})
    with pytest.raises(NotAnEmbedding):
        dc.verify_basic_lemma(D, C2, {0: f, 1: po.identity_map(C2)})


# -- embedding-subobjects -------------------------------------------------------------------------

def test_embedding_subobject_counts():
    assert len(dc.embedding_subobject_poset(C1)) == 1
    S2 = dc.embedding_subobject_poset(C2)
    assert sorted(map(set, S2)) == [{"⊥"}, {"⊥", "⊤"}]
    # every up-closed-under-max subset containing the bottom: {⊥}, {⊥,m}, {⊥,⊤}, {⊥,m,⊤}
    S3 = dc.embedding_subobject_poset(C3)
    assert len(S3) == len(oracles.idempotents_below_identity(C3)) == 4


@given(pointed_posets(5))
def test_embedding_subobjects_match_idempotent_oracle(A):
    S = dc.embedding_subobject_poset(A)
    want = {tuple(m[x] for x in A) for m in oracles.idempotents_below_identity(A)}
    assert set(S) == want
    for k in S:
        assert dc.idempotent_of(A, set(k)) == k
        assert dc.find_projection(dc.subposet_embedding(A, k).e) is not None


def test_check_smooth_embeddings_examples():
    assert dc.check_smooth_embeddings(C3, [dc.idempotent_of(C3, {"⊥"})]).passed
    fam = [dc.idempotent_of(C3, s) for s in ({"⊥"}, {"⊥", "m"}, {"⊥", "m", "⊤"})]
    cert = dc.check_smooth_embeddings(C3, fam)
    assert cert.passed and cert.witnesses["colimit"] == ["m", "⊤", "⊥"]
    assert cert.witnesses["projection"] == [["m", "m"], ["⊤", "⊤"], ["⊥", "⊥"]]
    with pytest.raises(NotDirected):
        dc.check_smooth_embeddings(VEE, [dc.idempotent_of(VEE, {"⊥", "a"}),
                                         dc.idempotent_of(VEE, {"⊥", "b"})])


def test_idempotent_of_rejects_non_embeddings():
    # {a, b} has no greatest element below ⊥, so its inclusion has no projection
    assert dc.idempotent_of(VEE, {"a", "b"}) is None


# -- local monotonicity and the coincidence of initial and terminal -----------------------------

def test_locally_monotone_functors():
    for F in (dc.PId(), dc.PConst(C2), dc.PSquare(), dc.PLift()):
        assert dc.check_locally_monotone(F).passed
    cert = dc.check_locally_monotone(dc.PFlatLift())
    assert cert.outcome == "Fail" and cert.counterexamples[0]["law"] == "monotone"


def test_initial_terminal_examples():
    cert = dc.initial_terminal_coincide(dc.PId(), 4)
    assert cert.passed and cert.witnesses["initial_carrier"] == ["⊥"]
    cert = dc.initial_terminal_coincide(dc.PConst(VEE), 4)
    assert cert.passed and cert.witnesses["initial_stage"] == cert.witnesses["terminal_stage"] == 1
    cert = dc.initial_terminal_coincide(dc.PSquare(), 4)
    assert cert.passed and len(cert.witnesses["initial_carrier"]) == 1


def test_initial_terminal_refuses_flat_lift():
    with pytest.raises(NotLocallyMonotone):
        dc.initial_terminal_coincide(dc.PFlatLift(), 4)


def test_enrichment_join_is_pointwise_on_all_small_homs():
    posets = dc.sample_posets()
    for A, B in itertools.product(posets, repeat=2):
        H = dc.hom_poset(A, B, check=False)
        if len(H.poset) <= 12:
            dc.check_enrichment(H)
