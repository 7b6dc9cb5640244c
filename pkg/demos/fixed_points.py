"""Four ways to find a least fixed point, on one small poset.

Kleene and Zermelo iterate from the bottom. Tarski takes the meet of the
pre-fixed points and needs a complete lattice. Pataraia's construction closes
{bottom} under f and directed joins and takes the maximum; its monoid variant
reads the answer off the top of the monoid of inflationary maps.
"""
from initalg import fixpoint as fp
from initalg import poset as po

D = po.validate_poset(["⊥", "a", "b", "⊤"],
                      [("⊥", "a"), ("⊥", "b"), ("⊥", "⊤"), ("a", "⊤"), ("b", "⊤")])
f = po.MonotoneEndo(D, {"⊥": "a", "a": "a", "b": "⊤", "⊤": "⊤"})

print("poset: the diamond ⊥ < a, b < ⊤;  f: ⊥->a, a->a, b->⊤, ⊤->⊤")
print("fixed points:", f.fixed_points())
k = fp.kleene_lfp(f)
print(f"kleene:   {k.value}  after {k.stages} step(s), trace {list(k.trace)}")
print(f"zermelo:  {fp.zermelo_lfp(f).value}")
print(f"tarski:   {fp.tarski_lfp(f)}  (meet of {{x : f x <= x}})")
print(f"pataraia: {fp.pataraia_lfp(f).value}  closure {sorted(fp.pataraia_closure(f))}")
print(f"monoid:   {fp.pataraia_via_monoid(f).value}")

# mu-transfer: a strict map commuting with the endomaps carries mu f to mu g
C2 = po.chain("0", "1")
g = po.MonotoneEndo(C2, {"0": "1", "1": "1"})
h = po.PosetMap(D, C2, {"⊥": "0", "a": "1", "b": "1", "⊤": "1"})
cert = fp.check_mu_transfer(f, g, h)
print(f"mu-transfer along h: {cert.outcome}, h(mu f) = {cert.witnesses['h_mu_f']} = mu g")
