import json
import pathlib
import random

import pytest
from hypothesis import given, strategies as st

from initalg import dcpo as dc
from initalg import finset as fs
from initalg import functor as fk
from initalg import instances as ins
from initalg import poset as po
from initalg.canon import Term
from initalg.errors import InstanceError

DEMOS = sorted((pathlib.Path(__file__).resolve().parents[1] / "demos" / "instances").glob("*.json"))


def roundtrip(doc):
    k, v = ins.parse(doc)
    out = ins.serialize(k, v)
    assert out == doc
    assert ins.serialize(*ins.parse(out)) == out
    return v


@pytest.mark.parametrize("path", DEMOS, ids=lambda p: p.stem)
def test_demo_files_round_trip(path):
    roundtrip(json.loads(path.read_text()))


def test_every_kind_round_trips():
    seen = set()
    for path in DEMOS:
        seen.add(json.loads(path.read_text())["kind"])
    C2 = po.chain("⊥", "⊤")
    C3 = po.chain("⊥", "m", "⊤")
    A = fs.FinSetObj([1, "x"])
    extra = [ins.encode_poset(po.antichain("a", "b")),
             ins.encode_poset(C3, "pointed_poset"),
             ins.encode_finset(A),
             ins.encode_finfn(fs.FinFn(A, fs.FinSetObj(["y"]), {1: "y", "x": "y"})),
             ins.encode_embedding(dc.find_projection(po.PosetMap(C2, C3, {"⊥": "⊥", "⊤": "⊤"})))]
    for doc in extra:
        roundtrip(doc)
        seen.add(doc["kind"])
    assert seen == set(ins.KINDS)


def test_functor_terms_survive_round_trip():
    F = fk.Compose(fk.FinPowerset(), fk.Sum(fk.Const(["k"]), fk.Product(fk.Id(), fk.NonemptyFinPowerset())))
    doc = ins.serialize("functor", F)
    G = roundtrip(doc)
    X = fs.FinSetObj([0])
    assert fk.apply_obj(G, X) == fk.apply_obj(F, X)
    nat = fk.one_plus_x()
    from initalg import coalgebra as co
    c = co.coalgebra(nat, [0, 1], {0: Term("Z"), 1: Term("S", None, (0,))})
    assert roundtrip(ins.encode_coalgebra(c)).structure == c.structure


@given(st.integers(0, 6), st.integers(0, 2 ** 32))
def test_random_posets_round_trip(n, seed):
    P = po.random_poset(n, random.Random(seed))
    assert roundtrip(ins.encode_poset(P)) == P


def test_refs_resolve():
    doc = {"kind": "finfn", "defs": {"S": {"elems": [1, 2]}},
           "dom": {"$ref": "S"}, "cod": {"$ref": "#/defs/S"}, "graph": [[1, 2], [2, 1]]}
    f = ins.parse(doc)[1]
    assert f.dom == f.cod == fs.FinSetObj([1, 2]) and f(1) == 2


@pytest.mark.parametrize("doc, pointer", [
    ([], ""),
    ({}, ""),
    ({"kind": "nope"}, "/kind"),
    ({"kind": "finset"}, ""),
    ({"kind": "poset", "elems": [1, 2], "leq": [[1, 3]]}, ""),
    ({"kind": "poset", "elems": [1, 1.5]}, "/elems/1"),
    ({"kind": "finfn", "dom": [1], "cod": [2], "graph": [[1, 2], [1, 2]]}, "/graph/1"),
    ({"kind": "finfn", "dom": {"$ref": "missing"}, "cod": [2], "graph": []}, "/dom"),
    ({"kind": "functor", "tag": "bogus"}, "/tag"),
    ({"kind": "algebra", "functor": {"tag": "container", "constructors": [{"name": "S", "arity": -1}]},
      "carrier": [0], "structure": []}, "/functor/constructors/0/arity"),
    ({"kind": "metric_family", "ambient": {"points": [1, 2], "d": [[1, 2, "x"]]}, "members": []},
     "/ambient/d/0/2"),
])
def test_errors_carry_json_pointers(doc, pointer):
    with pytest.raises(InstanceError) as e:
        ins.parse(doc)
    assert e.value.pointer == pointer


def test_ref_cycle_is_reported():
    doc = {"kind": "finset", "defs": {"a": {"$ref": "b"}, "b": {"$ref": "a"}}, "elems": {"$ref": "a"}}
    with pytest.raises(InstanceError) as e:
        ins.parse(doc)
    assert "cycle" in e.value.message


def test_embedding_without_projection_is_an_input_error():
    C2 = po.chain("⊥", "⊤")
    doc = ins.encode_embedding(dc.find_projection(po.identity_map(C2)))
    del doc["proj"]
    doc["e"]["map"] = [["⊥", "⊥"], ["⊤", "⊥"]]
    with pytest.raises(InstanceError) as e:
        ins.parse(doc)
    assert e.value.pointer == "/e"
