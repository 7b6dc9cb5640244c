"""Embeddings of pointed posets: colimits, smoothness, initial = terminal.

An embedding e comes with a projection p (p . e = id, e . p <= id). A cocone
of embeddings is a colimit exactly when the idempotents c_i . p_i join to the
identity; both sides are computed independently and compared. Then: directed
families of embedding-subobjects have a join computed by projections, and for
a locally monotone functor the initial algebra is also the terminal coalgebra.
"""
from initalg import dcpo as dc
from initalg import poset as po

C2 = po.chain("⊥", "⊤")
C3 = po.chain("⊥", "m", "⊤")
e = po.PosetMap(C2, C3, {"⊥": "⊥", "⊤": "⊤"})
emb = dc.find_projection(e)
print("projection of the 2-chain into the 3-chain:", emb.proj.map)

D = dc.EmbeddingDiagram(po.chain(0, 1), {0: C2, 1: C3}, {(0, 1): e})
good = dc.verify_basic_lemma(D, C3, {0: e, 1: po.identity_map(C3)})
print(f"cocone into C3: {good.outcome}; join of idempotents is the identity: {good.witnesses['embedding_join']}")
C4 = po.chain("⊥", "m", "n", "⊤")
into = po.PosetMap(C3, C4, {"⊥": "⊥", "m": "m", "⊤": "⊤"})
bad = dc.verify_basic_lemma(D, C4, {0: e.then(into), 1: into})
print(f"cocone into C4: {bad.outcome}; side 1 says {bad.witnesses['side1']['kind']}, "
      f"side 2 says {bad.witnesses['side2']['reason']!r}")

S = dc.embedding_subobject_poset(C3)
print(f"\nC3 has {len(S)} embedding-subobjects:", [sorted(set(k)) for k in S])
fam = [dc.idempotent_of(C3, s) for s in ({"⊥"}, {"⊥", "m"})]
cert = dc.check_smooth_embeddings(C3, fam)
print(f"smoothness on {{⊥}} <= {{⊥, m}}: {cert.outcome}, projection {cert.witnesses['projection']}")

print()
for name, F in [("Id", dc.PId()), ("Const(C2)", dc.PConst(C2)), ("X x X", dc.PSquare())]:
    cert = dc.initial_terminal_coincide(F, 4)
    print(f"{name:10} initial = terminal: {cert.outcome}, carrier {cert.witnesses['initial_carrier']}")
print("flat lifting is locally monotone:", dc.check_locally_monotone(dc.PFlatLift()).outcome)
