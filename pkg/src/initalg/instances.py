"""JSON instance files: decoding with JSON-pointer error locations, and encoding.

A document is an object with a ``kind`` field. Nested objects take their kind
from their position, so ``{"kind": "finfn", "dom": {"elems": [...]}, ...}``
needs no inner ``kind``. A top-level ``defs`` object holds named values that
may be used anywhere as ``{"$ref": "name"}``.

Elements are JSON strings or integers; structured elements (functor terms) are
``{"tag": .., "const": .., "args": [..]}``, see :func:`initalg.canon.encode`.
"""
import itertools
import json
from fractions import Fraction

from . import coalgebra as co
from . import dcpo as dc
from . import finset as fs
from . import functor as fk
from . import initial as ia
from . import metric as mt
from . import poset as po
from .canon import canon_key, canon_sorted, decode, encode
from .errors import CapExceeded, InitalgError, InstanceError

KINDS = ("poset", "pointed_poset", "finset", "finfn", "functor", "algebra", "coalgebra",
         "prefixed_point", "poset_map", "embedding", "subset_family", "metric_family",
         "embedding_diagram", "embedding_family")


def _esc(key):
    return str(key).replace("~", "~0").replace("/", "~1")


class _Reader:
    def __init__(self, doc):
        self.defs = doc.get("defs", {}) if isinstance(doc, dict) else {}
        self.cache = {}

    def resolve(self, node, ptr):
        seen = set()
        while isinstance(node, dict) and "$ref" in node:
            name = node["$ref"]
            if name.startswith("#/defs/"):
                name = name[len("#/defs/"):]
            if name not in self.defs:
                raise InstanceError(ptr, f"unresolved reference {node['$ref']!r}")
            if name in seen:
                raise InstanceError(ptr, f"reference cycle through {name!r}")
            seen.add(name)
            node, ptr = self.defs[name], f"/defs/{_esc(name)}"
        return node, ptr

    def field(self, node, key, ptr, default=..., types=None):
        if not isinstance(node, dict):
            raise InstanceError(ptr, "expected an object")
        if key not in node:
            if default is ...:
                raise InstanceError(ptr, f"missing field {key!r}")
            return default, f"{ptr}/{_esc(key)}"
        val, sub = self.resolve(node[key], f"{ptr}/{_esc(key)}")
        if types and not isinstance(val, types):
            raise InstanceError(sub, f"expected {' or '.join(t.__name__ for t in types)}")
        return val, sub

    def items(self, node, ptr):
        node, ptr = self.resolve(node, ptr)
        if not isinstance(node, list):
            raise InstanceError(ptr, "expected an array")
        return [(v, f"{ptr}/{k}") for k, v in enumerate(node)]

    def elem(self, node, ptr):
        if isinstance(node, bool) or isinstance(node, float):
            raise InstanceError(ptr, "elements are strings, integers or terms")
        try:
            return decode(node)
        except (ValueError, TypeError, AttributeError) as e:
            raise InstanceError(ptr, str(e)) from None

    def pairs(self, node, ptr):
        out = []
        for item, p in self.items(node, ptr):
            if not isinstance(item, list) or len(item) != 2:
                raise InstanceError(p, "expected a pair [x, y]")
            out.append((self.elem(item[0], f"{p}/0"), self.elem(item[1], f"{p}/1"), p))
        return out

    def mapping(self, node, ptr):
        """A map given as ``[[x, y], ..]``; duplicate keys are rejected."""
        out = {}
        for x, y, p in self.pairs(node, ptr):
            if x in out:
                raise InstanceError(p, f"{x} mapped twice")
            out[x] = y
        return out

    # -- kinds -----------------------------------------------------------------------------
    def build(self, kind, node, ptr):
        node, ptr = self.resolve(node, ptr)
        if not isinstance(node, dict):
            raise InstanceError(ptr, "expected an object")
        declared = node.get("kind", kind)
        if declared != kind:
            raise InstanceError(f"{ptr}/kind", f"expected kind {kind!r}, got {declared!r}")
        key = (kind, ptr)
        if key not in self.cache:
            try:
                self.cache[key] = getattr(self, "_" + kind)(node, ptr)
            except (InstanceError, CapExceeded):
                raise
            except InitalgError as e:
                raise InstanceError(ptr, f"{type(e).__name__}: {e}") from None
            except ValueError as e:
                raise InstanceError(ptr, str(e)) from None
        return self.cache[key]

    def _poset(self, node, ptr):
        els, p = self.field(node, "elems", ptr, types=(list,))
        elems = [self.elem(x, q) for x, q in self.items(els, p)]
        leq = [(x, y) for x, y, _ in self.pairs(*self.field(node, "leq", ptr, []))]
        return po.validate_poset(elems, leq)

    def _pointed_poset(self, node, ptr):
        return dc.pointed(self._poset(node, ptr))

    def _finset(self, node, ptr):
        if isinstance(node, dict):
            node, ptr = self.field(node, "elems", ptr, types=(list,))
        return fs.FinSetObj(self.elem(x, q) for x, q in self.items(node, ptr))

    def _set_at(self, node, key, ptr):
        val, p = self.field(node, key, ptr)
        if isinstance(val, list):
            return fs.FinSetObj(self.elem(x, q) for x, q in self.items(val, p))
        return self.build("finset", val, p)

    def _finfn(self, node, ptr):
        dom = self._set_at(node, "dom", ptr)
        cod = self._set_at(node, "cod", ptr)
        return fs.FinFn(dom, cod, self.mapping(*self.field(node, "graph", ptr)))

    def _functor(self, node, ptr):
        tag, _ = self.field(node, "tag", ptr, types=(str,))
        if tag == "id":
            return fk.Id()
        if tag == "const":
            return fk.Const(self._set_at(node, "set", ptr))
        if tag in ("sum", "product"):
            cls = fk.Sum if tag == "sum" else fk.Product
            return cls(self.build("functor", *self.field(node, "left", ptr)),
                       self.build("functor", *self.field(node, "right", ptr)))
        if tag == "compose":
            return fk.Compose(self.build("functor", *self.field(node, "outer", ptr)),
                              self.build("functor", *self.field(node, "inner", ptr)))
        if tag == "powerset":
            return fk.FinPowerset()
        if tag == "nonempty_powerset":
            return fk.NonemptyFinPowerset()
        if tag == "container":
            cons = []
            for c, p in self.items(*self.field(node, "constructors", ptr)):
                name, _ = self.field(c, "name", p, types=(str,))
                arity, ap = self.field(c, "arity", p, 0, types=(int,))
                if arity < 0:
                    raise InstanceError(ap, "arity must be nonnegative")
                consts = self._set_at(c, "consts", p) if "consts" in c else None
                cons.append(fk.Constructor(name, arity, consts))
            return fk.Container(tuple(cons))
        raise InstanceError(f"{ptr}/tag", f"unknown functor tag {tag!r}")

    def _carrier_functor(self, node, ptr):
        F = self.build("functor", *self.field(node, "functor", ptr))
        return F, self._set_at(node, "carrier", ptr)

    def _algebra(self, node, ptr):
        F, A = self._carrier_functor(node, ptr)
        g = self.mapping(*self.field(node, "structure", ptr))
        return co.Algebra(F, A, fs.FinFn(fk.apply_obj(F, A), A, g))

    def _coalgebra(self, node, ptr):
        F, C = self._carrier_functor(node, ptr)
        g = self.mapping(*self.field(node, "structure", ptr))
        return co.Coalgebra(F, C, fs.FinFn(C, fk.apply_obj(F, C), g))

    def _prefixed_point(self, node, ptr):
        F, A = self._carrier_functor(node, ptr)
        m = self.mapping(*self.field(node, "m", ptr))
        return ia.PreFixedPoint(F, A, fs.FinFn(fk.apply_obj(F, A), A, m))

    def _poset_map(self, node, ptr):
        dom = self.build("poset", *self.field(node, "dom", ptr))
        cod = self.build("poset", *self.field(node, "cod", ptr)) if "cod" in node else dom
        strict, _ = self.field(node, "strict", ptr, False, types=(bool,))
        return po.PosetMap(dom, cod, self.mapping(*self.field(node, "map", ptr)), strict)

    def _embedding(self, node, ptr):
        e = self.build("poset_map", *self.field(node, "e", ptr))
        if "proj" in node:
            proj = self.build("poset_map", *self.field(node, "proj", ptr))
            try:
                return dc.Embedding(e, proj)
            except InitalgError as err:
                raise InstanceError(f"{ptr}/proj", str(err)) from None
        found = dc.find_projection(e)
        if found is None:
            raise InstanceError(f"{ptr}/e", "map has no projection")
        return found

    def _subset_family(self, node, ptr):
        A = self._set_at(node, "ambient", ptr)
        fam = []
        for S, p in self.items(*self.field(node, "family", ptr)):
            fam.append(frozenset(self.elem(x, q) for x, q in self.items(S, p)))
        return A, fam

    def _metric_space(self, node, ptr):
        pts = [self.elem(x, q) for x, q in self.items(*self.field(node, "points", ptr))]
        table = {}
        for row, p in self.items(*self.field(node, "d", ptr)):
            if not isinstance(row, list) or len(row) != 3:
                raise InstanceError(p, "expected [x, y, distance]")
            try:
                v = Fraction(row[2]) if isinstance(row[2], (str, int)) else None
            except (ValueError, ZeroDivisionError):
                v = None
            if v is None:
                raise InstanceError(f"{p}/2", "distance must be a rational string or integer")
            table[(self.elem(row[0], f"{p}/0"), self.elem(row[1], f"{p}/1"))] = v
        return mt.metric(pts, table)

    def _metric_family(self, node, ptr):
        amb = self._metric_space(*self.field(node, "ambient", ptr))
        members = []
        for mem, p in self.items(*self.field(node, "members", ptr)):
            name, _ = self.field(mem, "name", p, types=(str,))
            members.append(mt.Member(name, self._metric_space(mem, p),
                                     self.mapping(*self.field(mem, "m", p))))
        return amb, members

    def _embedding_diagram(self, node, ptr):
        index = self.build("poset", *self.field(node, "index", ptr))
        objects = {}
        for item, p in self.items(*self.field(node, "objects", ptr)):
            i = self.elem(*self.field(item, "index", p))
            objects[i] = self.build("pointed_poset", *self.field(item, "poset", p))
        maps = {}
        for item, p in self.items(*self.field(node, "maps", ptr, [])):
            i = self.elem(*self.field(item, "from", p))
            j = self.elem(*self.field(item, "to", p))
            if i not in objects or j not in objects:
                raise InstanceError(p, "map between unknown indices")
            maps[(i, j)] = po.PosetMap(objects[i], objects[j],
                                       self.mapping(*self.field(item, "map", p)))
        coc, cp = self.field(node, "cocone", ptr)
        C = self.build("pointed_poset", *self.field(coc, "object", cp))
        legs = {}
        for item, p in self.items(*self.field(coc, "legs", cp)):
            i = self.elem(*self.field(item, "index", p))
            if i not in objects:
                raise InstanceError(p, "leg at unknown index")
            legs[i] = po.PosetMap(objects[i], C, self.mapping(*self.field(item, "map", p)))
        for i in index:
            if i not in objects or i not in legs:
                raise InstanceError(ptr, f"index {i} lacks an object or a cocone leg")
        return dc.EmbeddingDiagram(index, objects, maps), C, legs

    def _embedding_family(self, node, ptr):
        A = self.build("pointed_poset", *self.field(node, "ambient", ptr))
        fam = []
        for S, p in self.items(*self.field(node, "family", ptr)):
            image = {self.elem(x, q) for x, q in self.items(S, p)}
            key = dc.idempotent_of(A, image)
            if key is None:
                raise InstanceError(p, "not the image of an embedding")
            fam.append(key)
        return A, fam


def parse(doc, kind=None):
    """Decode an instance document. Returns ``(kind, value)``."""
    if not isinstance(doc, dict):
        raise InstanceError("", "instance must be a JSON object")
    k = doc.get("kind", kind)
    if k is None:
        raise InstanceError("", "missing field 'kind'")
    if k not in KINDS:
        raise InstanceError("/kind", f"unknown kind {k!r}")
    if kind is not None and k != kind:
        raise InstanceError("/kind", f"expected kind {kind!r}, got {k!r}")
    return k, _Reader(doc).build(k, doc, "")


def loads(raw, kind=None):
    """Parse the bytes of an instance file."""
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise InstanceError("", f"not JSON: {e}") from None
    return parse(doc, kind)


def read_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


def load(path, kind=None):
    raw = read_bytes(path)
    return loads(raw, kind), raw


# -- encoding ----------------------------------------------------------------------------------

def _elems(xs):
    return [encode(x) for x in xs]


def _pairs(items):
    return [[encode(x), encode(y)] for x, y in items]


def _sorted_pairs(P):
    return [(x, y) for x in P for y in P.up(x) if x != y]


def encode_poset(P, kind="poset"):
    return {"kind": kind, **_poset_body(P)}


def encode_finset(A):
    return {"kind": "finset", "elems": _elems(A)}


def encode_finfn(f):
    return {"kind": "finfn", "dom": _elems(f.dom), "cod": _elems(f.cod), "graph": _pairs(f.pairs())}


def encode_functor(F):
    if isinstance(F, fk.Id):
        return {"tag": "id"}
    if isinstance(F, fk.Const):
        return {"tag": "const", "set": _elems(F.values)}
    if isinstance(F, fk.NonemptyFinPowerset):
        return {"tag": "nonempty_powerset"}
    if isinstance(F, fk.FinPowerset):
        return {"tag": "powerset"}
    if isinstance(F, (fk.Sum, fk.Product)):
        return {"tag": "sum" if isinstance(F, fk.Sum) else "product",
                "left": encode_functor(F.left), "right": encode_functor(F.right)}
    if isinstance(F, fk.Compose):
        return {"tag": "compose", "outer": encode_functor(F.outer), "inner": encode_functor(F.inner)}
    if isinstance(F, fk.Container):
        cons = []
        for c in F.constructors:
            d = {"name": c.name, "arity": c.arity}
            if c.consts is not None:
                d["consts"] = _elems(c.consts)
            cons.append(d)
        return {"tag": "container", "constructors": cons}
    raise TypeError(f"cannot encode functor {F!r}")


def encode_algebra(a):
    return {"kind": "algebra", "functor": encode_functor(a.functor), "carrier": _elems(a.carrier),
            "structure": _pairs(a.structure.pairs())}


def encode_coalgebra(c):
    return {"kind": "coalgebra", "functor": encode_functor(c.functor), "carrier": _elems(c.carrier),
            "structure": _pairs(c.structure.pairs())}


def encode_prefixed_point(p):
    return {"kind": "prefixed_point", "functor": encode_functor(p.functor),
            "carrier": _elems(p.carrier), "m": _pairs(p.m.pairs())}


def _poset_body(P):
    return {"elems": _elems(P), "leq": _pairs(_sorted_pairs(P))}


def encode_poset_map(f):
    d = {"kind": "poset_map", "dom": _poset_body(f.dom), "map": _pairs((x, f(x)) for x in f.dom)}
    if f.cod != f.dom:
        d["cod"] = _poset_body(f.cod)
    if f.strict:
        d["strict"] = True
    return d


def encode_endo(f):
    return {"kind": "poset_map", "dom": _poset_body(f.poset),
            "map": _pairs((x, f(x)) for x in f.poset)}


def encode_embedding(emb):
    e, p = encode_poset_map(emb.e), encode_poset_map(emb.proj)
    del e["kind"], p["kind"]
    return {"kind": "embedding", "e": e, "proj": p}


def encode_subset_family(A, family):
    return {"kind": "subset_family", "ambient": _elems(A),
            "family": [_elems(canon_sorted(S)) for S in canon_sorted({frozenset(S) for S in family})]}


def _metric_body(space):
    return {"points": _elems(space.points),
            "d": [[encode(x), encode(y), str(space.d(x, y))]
                  for x, y in itertools.combinations(space.points, 2)]}


def encode_metric_family(ambient, members):
    return {"kind": "metric_family", "ambient": _metric_body(ambient),
            "members": [{"name": m.name, **_metric_body(m.space),
                         "m": _pairs((x, m.m[x]) for x in m.space.points)} for m in members]}


def encode_embedding_diagram(D, C, legs):
    idx = canon_sorted(D.index)
    return {
        "kind": "embedding_diagram",
        "index": _poset_body(D.index),
        "objects": [{"index": encode(i), "poset": _poset_body(D.objects[i])} for i in idx],
        "maps": [{"from": encode(i), "to": encode(j),
                  "map": _pairs((x, f(x)) for x in f.dom)}
                 for (i, j), f in sorted(D.maps.items(), key=lambda kv: canon_key(kv[0]))],
        "cocone": {"object": _poset_body(C),
                   "legs": [{"index": encode(i), "map": _pairs((x, legs[i](x)) for x in legs[i].dom)}
                            for i in idx]},
    }


def encode_embedding_family(A, family):
    return {"kind": "embedding_family", "ambient": _poset_body(A),
            "family": [_elems(canon_sorted(set(k))) for k in canon_sorted(family)]}


def serialize(kind, value):
    """Inverse of :func:`parse`: the document for a decoded ``(kind, value)``."""
    if kind in ("poset", "pointed_poset"):
        return encode_poset(value, kind)
    if kind == "functor":
        return {"kind": "functor", **encode_functor(value)}
    one = {"finset": encode_finset, "finfn": encode_finfn, "algebra": encode_algebra,
           "coalgebra": encode_coalgebra, "prefixed_point": encode_prefixed_point,
           "poset_map": encode_poset_map, "embedding": encode_embedding}
    many = {"subset_family": encode_subset_family, "metric_family": encode_metric_family,
            "embedding_diagram": encode_embedding_diagram,
            "embedding_family": encode_embedding_family}
    if kind in one:
        return one[kind](value)
    if kind in many:
        return many[kind](*value)
    raise ValueError(f"unknown kind {kind!r}")
