"""Write the sample instance files in demos/instances/ used by the README and demos.

Every file is built through the library and serialized with its encoders, so
the files always parse. Run from anywhere: ``python3 demos/make_instances.py``.
"""
import json
import pathlib

from initalg import coalgebra as co
from initalg import dcpo as dc
from initalg import finset as fs
from initalg import functor as fk
from initalg import initial as ia
from initalg import instances as ins
from initalg import metric as mt
from initalg import poset as po
from initalg.canon import Term

OUT = pathlib.Path(__file__).resolve().parent / "instances"


def Z():
    return Term("Z")


def S(x):
    return Term("S", None, (x,))


def build():
    files = {}
    c3 = po.chain(0, 1, 2)
    files["fixpoint_chain3.json"] = ins.encode_endo(po.MonotoneEndo(c3, {0: 1, 1: 2, 2: 2}))
    V = po.validate_poset(["bot", "l", "r"], [("bot", "l"), ("bot", "r")])
    files["fixpoint_vee.json"] = ins.encode_endo(po.MonotoneEndo(V, {"bot": "l", "l": "l", "r": "l"}))

    nat = fk.one_plus_x()
    files["functor_one_plus_x.json"] = {"kind": "functor", **ins.encode_functor(nat)}
    files["functor_const2.json"] = {"kind": "functor", **ins.encode_functor(fk.Const(["a", "b"]))}

    C = fs.FinSetObj([0, 1, 2])
    files["coalgebra_count3.json"] = ins.encode_coalgebra(
        co.coalgebra(nat, C, {0: Z(), 1: S(0), 2: S(1)}))
    files["coalgebra_loop.json"] = ins.encode_coalgebra(
        co.coalgebra(nat, fs.FinSetObj([0, 1]), {0: Z(), 1: S(1)}))
    A = fs.FinSetObj(["even", "odd"])
    files["algebra_parity.json"] = ins.encode_algebra(
        co.algebra(nat, A, {Z(): "even", S("even"): "odd", S("odd"): "even"}))
    files["algebra_sticky.json"] = ins.encode_algebra(
        co.algebra(nat, A, {Z(): "even", S("even"): "even", S("odd"): "odd"}))

    F = fk.Const(["a", "b"])
    carrier = fs.FinSetObj([0, 1, 2, 3])
    m = fs.FinFn(fk.apply_obj(F, carrier), carrier, {"a": 2, "b": 0})
    files["prefixed_const2.json"] = ins.encode_prefixed_point(ia.PreFixedPoint(F, carrier, m))

    two = po.chain("⊥", "a")
    three = po.chain("⊥", "a", "b")
    four = po.chain("⊥", "a", "b", "c")
    index = po.chain(0, 1)
    incl = po.PosetMap(two, three, {"⊥": "⊥", "a": "a"})
    D = dc.EmbeddingDiagram(index, {0: two, 1: three}, {(0, 1): incl})
    ident = po.identity_map(three)
    files["diagram_colimit.json"] = ins.encode_embedding_diagram(D, three, {0: incl, 1: ident})
    into4 = po.PosetMap(three, four, {"⊥": "⊥", "a": "a", "b": "b"})
    files["diagram_not_colimit.json"] = ins.encode_embedding_diagram(
        D, four, {0: incl.then(into4), 1: into4})

    files["subsets_chain.json"] = ins.encode_subset_family(
        fs.FinSetObj([1, 2, 3, 4]), [{1}, {1, 2}, {1, 2, 3}])
    diamond = po.validate_poset(["⊥", "l", "r", "⊤"],
                                [("⊥", "l"), ("⊥", "r"), ("⊥", "⊤"), ("l", "⊤"), ("r", "⊤")])
    fam = [dc.idempotent_of(diamond, s) for s in ({"⊥"}, {"⊥", "l"}, {"⊥", "l", "r", "⊤"})]
    files["embeddings_diamond.json"] = ins.encode_embedding_family(diamond, fam)

    amb = mt.metric(["x", "y", "z"], {("x", "y"): "1/2", ("x", "z"): "1/2", ("y", "z"): "1/2"})
    small = mt.metric(["p", "q"], {("p", "q"): "3/4"})
    big = mt.metric(["p", "q", "r"], {("p", "q"): "3/4", ("p", "r"): 1, ("q", "r"): "3/4"})
    files["metric_chain.json"] = ins.encode_metric_family(amb, [
        mt.Member("small", small, {"p": "x", "q": "y"}),
        mt.Member("big", big, {"p": "x", "q": "y", "r": "z"})])
    return files


def main():
    OUT.mkdir(exist_ok=True)
    for name, doc in sorted(build().items()):
        (OUT / name).write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
        print(name)


if __name__ == "__main__":
    main()
