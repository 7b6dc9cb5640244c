"""Finite sets and functions: monos, isos, directed colimits, subobject lattices."""
import itertools
from dataclasses import dataclass, field

from . import poset as po
from .canon import canon_key, canon_sorted, encode
from .caps import DEFAULT
from .certificate import FAIL, PASS, Certificate
from .errors import (CapExceeded, DuplicateElement, NotDirected, NotFunctorial,
                     NotMono, NotTotal, UnknownElement)


class FinSetObj:
    """A finite set of canonical elements, stored in canonical order."""

    __slots__ = ("elems", "_set")

    def __init__(self, elems=()):
        elems = canon_sorted(elems)
        s = frozenset(elems)
        if len(s) != len(elems):
            for a, b in zip(elems, elems[1:]):
                if a == b:
                    raise DuplicateElement(a)
        self.elems = tuple(elems)
        self._set = s

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x):
        return x in self._set

    def __eq__(self, other):
        return isinstance(other, FinSetObj) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return "FinSetObj{" + ", ".join(map(str, self.elems)) + "}"

    def as_set(self):
        return self._set


EMPTY = FinSetObj()


def initial_object():
    """The empty set: the colimit of the empty diagram."""
    return EMPTY


@dataclass(frozen=True, eq=False)
class FinFn:
    """A total function between finite sets."""

    dom: FinSetObj
    cod: FinSetObj
    graph: dict = field(repr=False)

    def __post_init__(self):
        for x in self.dom:
            if x not in self.graph:
                raise NotTotal(x)
            if self.graph[x] not in self.cod:
                raise UnknownElement(self.graph[x])
        if len(self.graph) != len(self.dom):
            extra = next(x for x in self.graph if x not in self.dom)
            raise UnknownElement(extra)

    def __call__(self, x):
        return self.graph[x]

    def __eq__(self, other):
        return (isinstance(other, FinFn) and self.dom == other.dom
                and self.cod == other.cod and self.graph == other.graph)

    def __hash__(self):
        return hash((self.dom, self.cod, tuple(self.graph[x] for x in self.dom)))

    def then(self, g):
        """``g . self``."""
        return FinFn(self.dom, g.cod, {x: g.graph[y] for x, y in self.graph.items()})

    def image(self):
        return frozenset(self.graph.values())

    def pairs(self):
        return [(x, self.graph[x]) for x in self.dom]


def identity(A):
    return FinFn(A, A, {x: x for x in A})


def inclusion(S, A):
    """The inclusion ``S -> A`` for ``S`` a subset (or sub-object) of ``A``."""
    S = S if isinstance(S, FinSetObj) else FinSetObj(S)
    return FinFn(S, A, {x: x for x in S})


def empty_map(A):
    return FinFn(EMPTY, A, {})


def compose(g, f):
    """``g . f``."""
    return f.then(g)


def is_mono(f):
    """Monos of finite sets are exactly the injections."""
    return len(f.image()) == len(f.dom)


def invert(f):
    """The inverse of a bijection, or ``None``."""
    if not is_mono(f) or len(f.dom) != len(f.cod):
        return None
    return FinFn(f.cod, f.dom, {y: x for x, y in f.graph.items()})


def is_iso(f):
    """``(True, inverse)`` for a bijection, else ``(False, None)``."""
    inv = invert(f)
    return inv is not None, inv


def factor_through(u, t):
    """The unique ``h`` with ``t . h = u``, or ``None`` when ``u`` does not
    factor through ``t``. Both maps must be monic with a common codomain."""
    for m, name in ((u, "u"), (t, "t")):
        if not is_mono(m):
            raise NotMono(f"{name} is not injective")
    if u.cod != t.cod:
        raise ValueError("u and t need a common codomain")
    back = {y: x for x, y in t.graph.items()}
    if not u.image() <= back.keys():
        return None
    return FinFn(u.dom, t.dom, {x: back[u.graph[x]] for x in u.dom})


# -- directed diagrams and their colimits --------------------------------------------------

@dataclass(frozen=True, eq=False)
class Diagram:
    """A diagram of finite sets over a finite index poset.

    ``maps`` needs an entry for every pair ``i < j`` of the index or only for
    enough of them to generate the rest by composition (covering pairs
    suffice); :meth:`connector` fills in the remainder and identities.
    """

    index: po.FinPoset
    objects: dict
    maps: dict

    def connector(self, i, j):
        if i == j:
            return identity(self.objects[i])
        if (i, j) in self.maps:
            return self.maps[(i, j)]
        for (a, b), f in sorted(self.maps.items(), key=lambda kv: canon_key(kv[0])):
            if a == i and self.index.leq(b, j):
                return f.then(self.connector(b, j))
        raise NotFunctorial(f"no path of connecting maps from {i!r} to {j!r}")

    def check(self):
        I = self.index
        for i in I:
            if i not in self.objects:
                raise NotFunctorial(f"no object at index {i!r}")
        for (i, j), f in self.maps.items():
            if not I.leq(i, j):
                raise NotFunctorial(f"map {i!r}->{j!r} against the index order")
            if f.dom != self.objects[i] or f.cod != self.objects[j]:
                raise NotFunctorial(f"map {i!r}->{j!r} has the wrong (co)domain")
        # every generated composite agrees with any listed one
        for i in I:
            for j in I.up(i):
                for k in I.up(j):
                    if self.connector(i, j).then(self.connector(j, k)) != self.connector(i, k):
                        raise NotFunctorial(f"composite {i!r}->{j!r}->{k!r} disagrees")
        return self


class UnionFind:
    """Union-find whose class representatives are canonical-least members."""

    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if canon_key(rb) < canon_key(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra

    def classes(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


@dataclass(frozen=True)
class Colimit:
    obj: FinSetObj
    injections: dict
    representatives: dict = field(repr=False)   # colimit element -> (index, element)
    top: object = None


def directed_colimit(D):
    """Colimit of a directed diagram of finite sets.

    The disjoint union of all ``D_i`` is quotiented by the equivalence
    generated by ``(i, x) ~ (j, d_ij x)`` (union-find). Each class contains
    exactly one element of the object at the greatest index (a finite directed
    poset has one); that element names the class, so the result is literally
    the value at the top, and the injections are the connecting maps into it.
    """
    I = D.index
    if not len(I) or not po.is_directed(I, list(I)):
        raise NotDirected()
    D.check()
    uf = UnionFind((i, x) for i in I for x in D.objects[i])
    for i in I:
        for j in I.up(i):
            f = D.connector(i, j)
            for x in D.objects[i]:
                uf.union((i, x), (j, f(x)))
    top = po.top(I)
    classes = uf.classes()
    names = {}
    for root, members in classes.items():
        at_top = [x for (i, x) in members if i == top]
        if len(at_top) != 1:
            raise NotFunctorial("class meets the top object in %d elements" % len(at_top))
        names[root] = at_top[0]
    obj = FinSetObj(names.values())
    injections = {i: FinFn(D.objects[i], obj, {x: names[uf.find((i, x))] for x in D.objects[i]})
                  for i in I}
    for i in I:
        if injections[i] != D.connector(i, top):
            raise NotFunctorial("quotient disagrees with the connecting map into the top")
    reps = {names[r]: r for r in classes}
    return Colimit(obj, injections, reps, top)


def factorizer(colim, cocone):
    """The unique map out of the colimit through which ``cocone`` (index ->
    FinFn) factors; raises ``NotFunctorial`` when the maps do not agree."""
    graph = {}
    cod = None
    for i, c in cocone.items():
        cod = c.cod
        for x in c.dom:
            z = colim.injections[i](x)
            y = c(x)
            if graph.setdefault(z, y) != y:
                raise NotFunctorial(f"cocone legs disagree on class {z!r}")
    return FinFn(colim.obj, cod, graph)


# -- subobjects ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SubobjectLattice:
    """Subsets of ``ambient`` under inclusion, each standing for its inclusion map."""

    ambient: FinSetObj
    carrier: po.FinPoset


def subobject_lattice(A, cap=None):
    cap = DEFAULT.sub if cap is None else cap
    if len(A) > cap:
        raise CapExceeded("subobject lattice 2^|A|", len(A), cap)
    subsets = [frozenset(c) for r in range(len(A) + 1)
               for c in itertools.combinations(A.elems, r)]
    return SubobjectLattice(A, po.FinPoset.from_le(subsets, lambda a, b: a <= b))


def _first_undirected_pair(family):
    for a, b in itertools.combinations(family, 2):
        if not any(a | b <= c for c in family):
            return a, b
    return None


def check_smooth_finset(A, family):
    """Smoothness of monos in finite sets for one directed family of subsets.

    Builds the inclusion diagram indexed by the family itself, takes its
    colimit, factors the inclusions into ``A`` through it and checks that the
    factorizer is monic with image the union (the join in ``Sub(A)``).
    """
    family = canon_sorted({frozenset(S) for S in family})
    for S in family:
        bad = S - A.as_set()
        if bad:
            raise UnknownElement(next(iter(canon_sorted(bad))))
    if not family:
        raise NotDirected()
    pair = _first_undirected_pair(family)
    if pair:
        raise NotDirected(*pair)
    index = po.FinPoset.from_le(family, lambda a, b: a <= b)
    objects = {S: FinSetObj(S) for S in family}
    maps = {(S, T): inclusion(objects[S], objects[T])
            for S, T in index.covers()}
    colim = directed_colimit(Diagram(index, objects, maps))
    m = factorizer(colim, {S: inclusion(objects[S], A) for S in family})
    union = frozenset().union(*family)
    lattice_join = po.join(index, family)
    ok = is_mono(m) and m.image() == union and lattice_join == union
    return Certificate(
        command="check-smooth",
        outcome=PASS if ok else FAIL,
        witnesses={
            "join": encode(union),
            "colimit": [encode(x) for x in colim.obj],
            "factorizer": [[encode(x), encode(y)] for x, y in m.pairs()],
            "representatives": [[encode(z), encode(i), encode(x)]
                                for z, (i, x) in sorted(colim.representatives.items(),
                                                        key=lambda kv: canon_key(kv[0]))],
        },
        counterexamples=[] if ok else [{"factorizer_injective": is_mono(m)}],
    )
