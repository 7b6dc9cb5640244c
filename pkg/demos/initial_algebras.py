"""Initial algebras three ways, and what happens when there is none.

For F X = {a, b} + X x 0 (a constant, padded with an empty product) the
initial-algebra chain 0 -> F0 -> FF0 -> ... stops at stage 1. A pre-fixed
point (an injective algebra) lets us find the same initial algebra as the
least fixed point of S |-> m[F S] on its subsets. Hylomorphisms in both
directions compare the two answers. For F X = 1 + X the chain never stops and
the result is Unknown, not Fail.
"""
from initalg import coalgebra as co
from initalg import finset as fs
from initalg import functor as fk
from initalg import initial as ia
from initalg.canon import Term

B = fs.FinSetObj(["a", "b"])
F = fk.Sum(fk.Const(B), fk.Product(fk.Id(), fk.Const(fs.FinSetObj())))
s = ia.initial_chain(F, 6)
print(f"chain sizes {s.sizes()}: converged at stage {s.stage}")
chain = ia.chain_to_initial_algebra(s)
print("carrier from the chain:", list(chain.carrier))

A = fs.FinSetObj(range(5))
FA = list(fk.apply_obj(F, A))
p = ia.PreFixedPoint(F, A, fs.FinFn(fk.apply_obj(F, A), A, dict(zip(FA, [3, 1]))))
sub = ia.initial_algebra_via_subobjects(p)
print("carrier inside the pre-fixed point {0..4}:", list(sub.carrier))
cert = ia.cross_validate(F, p, 6)
print(f"cross-validation: {cert.outcome}; phi {cert.witnesses['phi']}")
print("Zermelo iterates on subsets:", cert.witnesses["iterates"])

nat = fk.one_plus_x()
cert = ia.chain_certificate(nat, 5)
print(f"\n1 + X, budget 5: {cert.outcome} ({cert.notes[0]}), sizes {cert.witnesses['sizes']}")

# recursion: a well-founded coalgebra has exactly one map into every algebra
Z, S = Term("Z"), lambda x: Term("S", None, (x,))
count = co.coalgebra(nat, [0, 1, 2, 3], {0: Z, 1: S(0), 2: S(1), 3: S(2)})
parity = co.algebra(nat, ["even", "odd"], {Z: "even", S("even"): "odd", S("odd"): "even"})
print("parity by hylomorphism:", co.solve_hylo(count, parity).graph)
loop = co.coalgebra(nat, [0], {0: S(0)})
print("a loop is not recursive:", co.hylo_certificate(loop, co.algebra(
    nat, ["x", "y"], {Z: "x", S("x"): "x", S("y"): "y"})).outcome)
