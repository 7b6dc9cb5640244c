"""Finite pointed posets as an order-enriched category.

Objects are finite posets with a least element. Every such poset is a dcpo
and every monotone map is continuous, so hom-sets ordered pointwise are again
finite pointed posets. Maps are :class:`~initalg.poset.PosetMap`; elements of
a hom poset are the image tuples ``PosetMap.key()``.

Two hom conventions are used. ``strict=False`` gives all monotone maps, the
category where composition is only left-strict. ``strict=True`` keeps the maps
that preserve bottom; there the one-point poset is a zero object, which is
what the initial and terminal chains start from.
"""
import itertools
from functools import lru_cache
from dataclasses import dataclass, field

from . import fixpoint as fp
from . import poset as po
from .canon import canon_key, canon_sorted, encode
from .caps import DEFAULT
from .certificate import FAIL, PASS, Certificate
from .errors import (CapExceeded, EnrichmentViolation, InternalInvariant,
                     MonotonicityViolation, NoBottom, NotACocone, NotAnEmbedding,
                     NotConverged, NotDirected, NotLocallyMonotone)

ONE = po.FinPoset(("⊥",), (1,))


def pointed(P):
    """``P`` itself, after checking it has a least element."""
    if po.bottom(P) is None:
        raise NoBottom("pointed poset needs a least element")
    return P


def pmap(dom, cod, mapping, strict=False):
    return po.PosetMap(dom, cod, dict(mapping), strict)


def const_bottom(A, B):
    b = po.bottom(B)
    return po.PosetMap(A, B, {x: b for x in A})


def is_identity(f):
    return all(f(x) == x for x in f.dom)


def _graph(f):
    return [[encode(x), encode(f(x))] for x in f.dom]


# -- hom posets --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HomPoset:
    dom: po.FinPoset
    cod: po.FinPoset
    poset: po.FinPoset          # elements are image tuples in the order of ``dom``
    strict: bool = False

    def to_map(self, key):
        return po.PosetMap(self.dom, self.cod, dict(zip(self.dom.elems, key)))

    def maps(self):
        return [self.to_map(k) for k in self.poset]


def hom_poset(A, B, strict=False, cap=None, check=True):
    """All monotone (or strict) maps ``A -> B`` under the pointwise order.

    With ``check`` the enrichment equations are verified on every map and
    every directed set of maps for small homs: composition with the
    bottom map on either side, and composition preserving directed joins on
    either side. ``f . bot = bot`` only holds for strict ``f``, so it is
    checked on strict homs; ``bot . f = bot`` is checked always.
    """
    pointed(A), pointed(B)
    cap = DEFAULT.brute if cap is None else cap
    bound = len(B) ** len(A)
    if bound > cap:
        raise CapExceeded("hom-set |B|^|A|", bound, cap)
    keys = [tuple(m[x] for x in A) for m in po.monotone_maps(A, B, strict=strict)]
    P = po.FinPoset.from_le(keys, lambda a, b: all(B.leq(u, v) for u, v in zip(a, b)))
    H = HomPoset(A, B, P, strict)
    if check and len(P) <= DEFAULT.enum:
        check_enrichment(H)
    return H


def pointwise_join(B, maps):
    """Pointwise join of maps into ``B`` as an image dict, or ``None``."""
    dom = maps[0].dom
    out = {}
    for x in dom:
        j = po.join(B, [f(x) for f in maps])
        if j is None:
            return None
        out[x] = j
    return po.PosetMap(dom, B, out)


def check_enrichment(H, cap=None):
    """The four equations of an order-enriched category, on ``H = hom(A, B)``.

    Composites are taken with ``hom(B, B)`` on the left and ``hom(A, A)`` on
    the right, so everything stays inside maps between ``A`` and ``B``.
    """
    A, B = H.dom, H.cod
    botAB = const_bottom(A, B)
    if tuple(botAB(x) for x in A) != po.bottom(H.poset):
        raise EnrichmentViolation("bottom of hom", [])
    left = [po.PosetMap(B, B, m) for m in po.monotone_maps(B, B, strict=H.strict)]
    right = [po.PosetMap(A, A, m) for m in po.monotone_maps(A, A, strict=H.strict)]
    botBB = const_bottom(B, B)
    for f in H.maps():
        if botAB.then(botBB) != botAB or f.then(botBB) != botAB:
            raise EnrichmentViolation("bot . f = bot", _graph(f))
        if f.is_strict() and const_bottom(A, A).then(f) != botAB:
            raise EnrichmentViolation("f . bot = bot", _graph(f))
    dsets = list(po.directed_subsets(H.poset, cap=cap))
    for D in dsets:
        gs = [H.to_map(k) for k in D]
        j = H.to_map(po.join(H.poset, D))
        pj = pointwise_join(B, gs)
        if pj is None or pj != j:
            raise EnrichmentViolation("join in hom is pointwise", [list(k) for k in D])
        for f in left:
            if j.then(f) != pointwise_join(B, [g.then(f) for g in gs]):
                raise EnrichmentViolation("f . join g_i = join f . g_i", _graph(f))
        for f in right:
            if f.then(j) != pointwise_join(B, [f.then(g) for g in gs]):
                raise EnrichmentViolation("(join g_i) . f = join g_i . f", _graph(f))
    return True


# -- embeddings ----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Embedding:
    e: po.PosetMap
    proj: po.PosetMap

    def __post_init__(self):
        if not is_identity(self.e.then(self.proj)):
            raise InternalInvariant("proj . e is not the identity")
        if not self.proj.then(self.e).below(po.identity_map(self.e.cod)):
            raise InternalInvariant("e . proj is not below the identity")


def projection_candidate(e):
    """The only possible projection, ``y |-> max {x : e x <= y}``, or ``None``.

    (A projection is right adjoint to its embedding.) Used by recheck, where
    enumeration is not allowed.
    """
    A, B = e.dom, e.cod
    out = {}
    for y in B:
        below = [x for x in A if B.leq(e(x), y)]
        top = po.greatest(A, below) if below else None
        if top is None:
            return None
        out[y] = top
    try:
        p = po.PosetMap(B, A, out)
    except MonotonicityViolation:
        return None
    if is_identity(e.then(p)) and p.then(e).below(po.identity_map(B)):
        return p
    return None


def find_projection(e, cap=None):
    """Search all monotone ``p: B -> A`` with ``p . e = id`` and ``e . p <= id``.

    The search runs to the end so that a second witness would be caught.
    """
    A, B = e.dom, e.cod
    cap = DEFAULT.brute if cap is None else cap
    if len(A) ** len(B) > cap:
        raise CapExceeded("projection search |A|^|B|", len(A) ** len(B), cap)
    if len({e(x) for x in A}) != len(A):
        return None
    found = []
    idB = po.identity_map(B)
    for m in po.monotone_maps(B, A):
        p = po.PosetMap(B, A, m)
        if is_identity(e.then(p)) and p.then(e).below(idB):
            found.append(p)
    if len(found) > 1:
        raise InternalInvariant("two projections for one embedding")
    return Embedding(e, found[0]) if found else None


def compose_embeddings(first, second):
    """``second . first`` with projection ``first.proj . second.proj``."""
    return Embedding(first.e.then(second.e), second.proj.then(first.proj))


# -- directed diagrams of embeddings and the Basic Lemma ----------------------------------

@dataclass(frozen=True, eq=False)
class EmbeddingDiagram:
    """Objects over a directed finite index with connecting maps ``maps[(i, j)]``
    for enough pairs ``i < j`` to generate the rest by composition."""

    index: po.FinPoset
    objects: dict
    maps: dict

    def connector(self, i, j):
        if i == j:
            return po.identity_map(self.objects[i])
        if (i, j) in self.maps:
            return self.maps[(i, j)]
        for (a, b), f in sorted(self.maps.items(), key=lambda kv: canon_key(kv[0])):
            if a == i and self.index.leq(b, j):
                return f.then(self.connector(b, j))
        raise NotACocone((i, j))

    def top(self):
        t = po.top(self.index)
        if t is None or not po.is_directed(self.index, list(self.index)):
            raise NotDirected()
        return t


def _extensions(C, X, fixed, limit=2):
    """Up to ``limit`` monotone maps ``C -> X`` extending the partial map ``fixed``."""
    order = po.linear_extension(C)
    out = []
    assign = dict(fixed)

    def ok(x, y):
        return (all(X.leq(assign[p], y) for p in C.down(x) if p in assign and p != x)
                and all(X.leq(y, assign[q]) for q in C.up(x) if q in assign and q != x))

    for x, y in fixed.items():
        if not ok(x, y):
            return out
    free = [x for x in order if x not in fixed]

    def rec(k):
        if len(out) >= limit:
            return
        if k == len(free):
            out.append(dict(assign))
            return
        x = free[k]
        for y in X:
            if ok(x, y):
                assign[x] = y
                rec(k + 1)
                del assign[x]

    rec(0)
    return out


def test_objects(D, C):
    """Posets used to probe the universal property: the top object, the
    cocone's codomain and every pointed poset with at most three elements."""
    return [("top", D.objects[D.top()]), ("cocone", C)] + [(f"small{k}", P)
                                                           for k, P in enumerate(sample_posets())]


def colimit_side(D, C, cocone, cap=None):
    """Side (1): does every cocone into each test object factor uniquely?

    A cocone out of a diagram with a top index ``k`` is determined by its leg
    at ``k``, so cocones into ``X`` are the monotone maps ``D_k -> X``. The
    probe is exhaustive over the test objects. Its verdict is returned with a
    witness that can be checked without search: the inverse of ``c_k`` on
    success, :func:`colimit_failure_witness` otherwise.
    """
    k = D.top()
    Dk, ck = D.objects[k], cocone[k]
    verdict = True
    for name, X in test_objects(D, C):
        for xk in po.monotone_maps(Dk, X):
            fixed = {}
            clash = False
            for d in Dk:
                if fixed.setdefault(ck(d), xk[d]) != xk[d]:
                    clash = True
                    break
            if clash or len(_extensions(C, X, fixed)) != 1:
                verdict = False
                break
        if not verdict:
            break
    if verdict:
        inv = order_iso_inverse(ck)
        if inv is None:
            raise InternalInvariant("universal cocone whose top leg is not an isomorphism")
        return True, {"inverse": _graph(inv), "tested": len(test_objects(D, C))}
    w = colimit_failure_witness(D, C, cocone)
    if w is None:
        raise InternalInvariant("probe failed but the top leg is an isomorphism")
    return False, w


CHAIN2 = po.chain("0", "1")


def colimit_failure_witness(D, C, cocone):
    """A search-free reason why the cocone is not a colimit, or ``None``.

    * ``c_k(d1) <= c_k(d2)`` with ``d1 </= d2``: the identity cocone into
      ``D_k`` has no factorization, since it would give ``d1 <= d2``.
    * some ``y`` outside the image of ``c_k``: the cocone into the 2-chain
      marking ``{d : y <= c_k d}`` has two factorizations, the up-set of
      ``y`` and the up-set generated by the image elements above ``y``.
    """
    k = D.top()
    Dk, c = D.objects[k], cocone[k]
    for d1 in Dk:
        for d2 in Dk:
            if d1 != d2 and C.leq(c(d1), c(d2)) and not Dk.leq(d1, d2):
                return {"kind": "no_factorization", "conflict": [encode(d1), encode(d2)]}
    image = {c(d) for d in Dk}
    outside = [z for z in C if z not in image]
    if not outside:
        return None
    y = outside[0]
    leg = {d: "1" if C.leq(y, c(d)) else "0" for d in Dk}
    f1 = {z: "1" if C.leq(y, z) else "0" for z in C}
    f2 = {z: "1" if any(C.leq(y, c(d)) and C.leq(c(d), z) for d in Dk) else "0" for z in C}
    return {"kind": "two_factorizations", "outside": encode(y),
            "leg": [[encode(d), leg[d]] for d in Dk],
            "maps": [[[encode(z), f[z]] for z in C] for f in (f1, f2)]}


def embedding_side(D, C, cocone):
    """Side (2): each leg an embedding, ``{c_i . proj_i}`` directed in
    ``hom(C, C)`` with join ``id_C``. Returns ``(verdict, witness)``."""
    projs = {}
    for i in D.index:
        p = projection_candidate(cocone[i])
        if p is None:
            return False, {"reason": "leg is not an embedding", "index": encode(i)}
        projs[i] = p
    idem = {i: projs[i].then(cocone[i]) for i in D.index}
    keys = {i: idem[i].key() for i in D.index}
    for i, j in itertools.combinations(D.index, 2):
        if not any(idem[i].below(idem[k]) and idem[j].below(idem[k]) for k in D.index):
            return False, {"reason": "idempotents not directed", "pair": [encode(i), encode(j)]}
    j = pointwise_join(C, list(idem.values()))
    if not is_identity(j):
        return False, {"reason": "join is not the identity",
                       "join": _graph(j)}
    return True, {"projections": {str(i): _graph(projs[i]) for i in canon_sorted(D.index)},
                  "idempotents": {str(i): [encode(y) for y in keys[i]] for i in canon_sorted(D.index)}}


def check_cocone(D, C, cocone):
    for i in D.index:
        if cocone[i].dom != D.objects[i] or cocone[i].cod != C:
            raise NotACocone((i, i))
    for i in D.index:
        for j in D.index.up(i):
            if D.connector(i, j).then(cocone[j]) != cocone[i]:
                raise NotACocone((i, j))


def verify_basic_lemma(D, C, cocone, cap=None):
    """Evaluate both sides of the colimit characterization independently.

    The outcome is Pass when the cocone is a colimit by both criteria, Fail when
    neither holds. A disagreement would refute the theorem and is raised.
    """
    for i in D.index:
        pointed(D.objects[i])
    pointed(C)
    for (i, j), f in D.maps.items():
        if projection_candidate(f) is None:
            raise NotAnEmbedding(f"connecting map {i!r} -> {j!r}")
    check_cocone(D, C, cocone)
    s1, w1 = colimit_side(D, C, cocone, cap)
    s2, w2 = embedding_side(D, C, cocone)
    if s1 != s2:
        raise InternalInvariant(f"colimit side {s1} but embedding side {s2}")
    return Certificate(
        command="verify-colimit",
        outcome=PASS if s1 else FAIL,
        witnesses={"colimit": s1, "embedding_join": s2, "agree": True,
                   "side1": w1, "side2": w2},
        caps={"test_object_max_size": 3},
        counterexamples=[] if s1 else [w1, w2],
        notes=["the universal property is probed against the top object, the cocone "
               "codomain and all pointed posets with at most 3 elements"],
    )


# -- embedding-subobjects ------------------------------------------------------------------

def idempotents_below_identity(A):
    """Monotone ``p`` with ``p . p = p`` and ``p <= id``, as image tuples."""
    out = []
    for m in po.monotone_maps(A, A, below_identity=True):
        if all(m[m[x]] == m[x] for x in A):
            out.append(tuple(m[x] for x in A))
    return out


def idempotent_of(A, S):
    """The idempotent ``y |-> max (S below y)`` whose image is ``S``, or ``None``
    when the inclusion of ``S`` is not an embedding."""
    S = set(S)
    key = []
    for y in A:
        g = po.greatest(A, [s for s in S if A.leq(s, y)])
        if g is None:
            return None
        key.append(g)
    key = tuple(key)
    idx = {x: i for i, x in enumerate(A.elems)}
    if set(key) != S or any(key[idx[key[idx[x]]]] != key[idx[x]] for x in A):
        return None
    try:
        po.PosetMap(A, A, dict(zip(A.elems, key)))
    except MonotonicityViolation:
        return None
    return key


def embedding_subobject_poset(A, cap=None):
    """Embedding-subobjects of ``A``, keyed by their idempotents ``e . proj``.

    ``[e] <= [f]`` iff ``f . proj_f . e = e``; with ``p = e . proj_e`` and
    ``q = f . proj_f`` that is ``q . p = p``.
    """
    pointed(A)
    cap = DEFAULT.enum if cap is None else cap
    if len(A) > cap:
        raise CapExceeded("embedding-subobject enumeration |A|", len(A), cap)
    idx = {x: i for i, x in enumerate(A.elems)}
    keys = idempotents_below_identity(A)

    def le(p, q):
        return all(q[idx[y]] == y for y in p)

    return po.FinPoset.from_le(keys, le, check=True)


def subposet_embedding(A, key):
    """The inclusion of ``image(p)`` into ``A`` and its projection ``p``."""
    S = A.subposet(set(key))
    m = po.PosetMap(S, A, {x: x for x in S})
    proj = po.PosetMap(A, S, dict(zip(A.elems, key)))
    return Embedding(m, proj)


def check_smooth_embeddings(A, family, cap=None):
    """Smoothness of embeddings for one directed family of embedding-subobjects.

    For ``i <= j`` the connecting map ``e_ij`` is the inclusion of images; it
    must be an embedding with projection ``proj_i . m_j``. The colimit of the
    family is computed as the object at the greatest index with the connecting
    maps into it as legs; the factorizer ``m`` into ``A`` must be an embedding
    whose projection equals the join of ``c_i . proj_i``.
    """
    S = embedding_subobject_poset(A, cap)
    family = canon_sorted(set(tuple(k) for k in family))
    for k in family:
        if k not in S:
            raise InternalInvariant(f"{k!r} is not an embedding-subobject of A")
    if not po.is_directed(S, family):
        bad = next(((a, b) for a, b in itertools.combinations(family, 2)
                    if not any(S.leq(a, c) and S.leq(b, c) for c in family)), (None, None))
        raise NotDirected(*bad)
    emb = {k: subposet_embedding(A, k) for k in family}
    rows = []
    for i in family:
        for j in family:
            if i != j and S.leq(i, j):
                Si, Sj = emb[i].e.dom, emb[j].e.dom
                e_ij = po.PosetMap(Si, Sj, {x: x for x in Si})
                proj_ij = emb[j].e.then(emb[i].proj)          # proj_i . m_j
                if not (is_identity(e_ij.then(proj_ij))
                        and proj_ij.then(e_ij).below(po.identity_map(Sj))):
                    return Certificate(command="check-smooth", outcome=FAIL,
                                       counterexamples=[{"connector": [list(i), list(j)]}])
                rows.append([list(map(encode, i)), list(map(encode, j))])
    top = po.greatest(S, family)
    B = emb[top].e.dom
    legs = {k: po.PosetMap(emb[k].e.dom, B, {x: x for x in emb[k].e.dom}) for k in family}
    m = emb[top].e                                   # factorizer, m . c_i = m_i
    for k in family:
        if legs[k].then(m) != emb[k].e:
            raise InternalInvariant("factorizer does not commute with the legs")
    proj = find_projection(m)
    joined = pointwise_join(B, [emb[k].proj.then(legs[k]) for k in family])
    ok = proj is not None and joined == proj.proj
    return Certificate(
        command="check-smooth",
        outcome=PASS if ok else FAIL,
        witnesses={
            "join": [encode(x) for x in top],
            "colimit": [encode(x) for x in B],
            "projection": _graph(proj.proj) if proj else None,
            "connectors_checked": rows,
        },
        counterexamples=[] if ok else [{"reason": "projection differs from join of c_i . proj_i"}],
    )


# -- functors on pointed posets -----------------------------------------------------------

class PosetFunctor:
    """An endofunctor on finite pointed posets: ``obj`` and ``mor``."""

    def obj(self, A):
        raise NotImplementedError

    def mor(self, f):
        raise NotImplementedError


@dataclass(frozen=True)
class PId(PosetFunctor):
    def obj(self, A):
        return A

    def mor(self, f):
        return f


@dataclass(frozen=True)
class PConst(PosetFunctor):
    value: po.FinPoset

    def obj(self, A):
        return self.value

    def mor(self, f):
        return po.identity_map(self.value)


def _pair(x, y):
    return (x, y)


@dataclass(frozen=True)
class PProduct(PosetFunctor):
    left: PosetFunctor
    right: PosetFunctor

    def obj(self, A):
        return po.product(self.left.obj(A), self.right.obj(A), _pair)

    def mor(self, f):
        g, h = self.left.mor(f), self.right.mor(f)
        dom, cod = self.obj(f.dom), self.obj(f.cod)
        return po.PosetMap(dom, cod, {(x, y): (g(x), h(y)) for (x, y) in dom})


def PSquare():
    """``F X = X x X`` with the componentwise order."""
    return PProduct(PId(), PId())


LIFT = "⊥'"


def _lifted(x):
    return ("up", x)


@dataclass(frozen=True)
class PLift(PosetFunctor):
    """Adjoin a fresh bottom below a copy of ``X``."""

    def obj(self, A):
        return po.FinPoset.from_le(
            [LIFT] + [_lifted(x) for x in A],
            lambda a, b: a == LIFT or (b != LIFT and A.leq(a[1], b[1])))

    def mor(self, f):
        g = {LIFT: LIFT}
        g.update({_lifted(x): _lifted(f(x)) for x in f.dom})
        return po.PosetMap(self.obj(f.dom), self.obj(f.cod), g)


@dataclass(frozen=True)
class PFlatLift(PosetFunctor):
    """Discrete copy of ``X`` under a fresh bottom. A functor, but not locally
    monotone: ``f <= g`` gives incomparable images wherever ``f x != g x``."""

    def obj(self, A):
        return po.FinPoset.from_le([LIFT] + [_lifted(x) for x in A],
                                   lambda a, b: a == LIFT)

    def mor(self, f):
        g = {LIFT: LIFT}
        g.update({_lifted(x): _lifted(f(x)) for x in f.dom})
        return po.PosetMap(self.obj(f.dom), self.obj(f.cod), g)


@lru_cache(maxsize=None)
def sample_posets():
    """Pointed posets with at most three elements."""
    return tuple(P for n in (1, 2, 3) for P in po.all_posets(n) if po.bottom(P) is not None)


def local_monotonicity_samples(posets=None, strict=False):
    """All pairs ``f <= g`` in ``hom(A, B)`` for ``A, B`` among ``posets``."""
    posets = sample_posets() if posets is None else posets
    out = []
    for A in posets:
        for B in posets:
            H = hom_poset(A, B, strict=strict, check=False)
            for a in H.poset:
                for b in H.poset.up(a):
                    out.append((H.to_map(a), H.to_map(b)))
    return out


def check_locally_monotone(F, samples=None):
    """``f <= g`` implies ``F f <= F g``; also ``f <= id`` implies ``F f <= id``."""
    samples = local_monotonicity_samples() if samples is None else samples
    bad = []
    for f, g in samples:
        if not F.mor(f).below(F.mor(g)):
            bad.append({"law": "monotone", "f": _graph(f), "g": _graph(g)})
            break
    for f, _ in samples:
        if f.dom == f.cod and f.below(po.identity_map(f.dom)):
            Ff = F.mor(f)
            if not Ff.below(po.identity_map(Ff.dom)):
                bad.append({"law": "below identity", "f": _graph(f)})
                break
    return Certificate(command="locally-monotone", outcome=FAIL if bad else PASS,
                       witnesses={"samples": len(samples)}, counterexamples=bad)


# -- initial algebra = terminal coalgebra -----------------------------------------------------

def _unique_strict(A, B):
    return po.PosetMap(A, B, {x: po.bottom(B) for x in A})


def order_iso_inverse(f):
    """Inverse of an order isomorphism, or ``None``."""
    if len({f(x) for x in f.dom}) != len(f.dom) or len(f.dom) != len(f.cod):
        return None
    inv = {f(x): x for x in f.dom}
    try:
        return po.PosetMap(f.cod, f.dom, inv)
    except MonotonicityViolation:
        return None


@dataclass
class PosetChain:
    objects: list
    connectors: list
    stage: int = None
    inverse: po.PosetMap = None


def poset_initial_chain(F, budget):
    """``W_0 = 1``, ``W_{j+1} = F W_j``, ``w_01`` the strict map, ``w_{j+1,j+2} = F w_{j,j+1}``."""
    W, w = [ONE], []
    for j in range(budget):
        W.append(F.obj(W[j]))
        w.append(_unique_strict(W[0], W[1]) if j == 0 else F.mor(w[j - 1]))
        inv = order_iso_inverse(w[j])
        if inv is not None:
            return PosetChain(W, w, j, inv)
    return PosetChain(W, w)


def poset_terminal_chain(F, budget):
    """``V_0 = 1``, ``V_{j+1} = F V_j``, ``v_10`` the map to 1, ``v_{j+2,j+1} = F v_{j+1,j}``."""
    V, v = [ONE], []
    for j in range(budget):
        V.append(F.obj(V[j]))
        v.append(_unique_strict(V[1], V[0]) if j == 0 else F.mor(v[j - 1]))
        inv = order_iso_inverse(v[j])
        if inv is not None:
            return PosetChain(V, v, j, inv)
    return PosetChain(V, v)


def _endo_on_hom(H, fn):
    return po.check_monotone(H.poset, lambda k: fn(H.to_map(k)).key())


def initial_terminal_coincide(F, budget, samples=None):
    """Initial algebra and terminal coalgebra of ``F`` coincide (strict maps).

    Both chains are run; ``e: I -> T`` is the canonical cocone leg at the
    convergence stage (an algebra homomorphism into ``(T, tau^-1)``) and must
    be both an embedding and a projection. Independently, the coalgebra map
    ``T -> I`` is the least fixed point of ``h |-> iota . F h . tau`` on
    ``hom(T, I)`` (Pataraia), and its uniqueness is discharged by
    mu-transfer along precomposition ``hom(I, I) -> hom(T, I)``.
    """
    lm = check_locally_monotone(F, samples)
    if not lm.passed:
        raise NotLocallyMonotone(str(lm.counterexamples[0]))
    ic, tc = poset_initial_chain(F, budget), poset_terminal_chain(F, budget)
    if ic.stage is None or tc.stage is None:
        raise NotConverged("a chain did not converge within budget")
    I, iota = ic.objects[ic.stage], ic.inverse            # iota: F I -> I
    T, tau_inv = tc.objects[tc.stage], tc.connectors[tc.stage]   # tau^-1: F T -> T
    tau = tc.inverse                                       # tau: T -> F T
    iota_inv = ic.connectors[ic.stage]                     # I -> F I
    # canonical cocone into the algebra (T, tau^-1); its leg at the stage is e
    alpha = _unique_strict(ONE, T)
    for j in range(ic.stage):
        alpha = F.mor(alpha).then(tau_inv)
    e = alpha
    if e.dom != I:
        raise InternalInvariant("cocone leg has the wrong domain")
    if iota.then(e) != F.mor(e).then(tau_inv):
        raise InternalInvariant("e is not an algebra homomorphism")
    as_embedding = projection_candidate(e)
    # e is a projection when some embedding s has e as its projection
    s = projection_candidate_left(e)
    if as_embedding is None or s is None:
        return Certificate(command="initial-terminal", outcome=FAIL,
                           counterexamples=[{"embedding": as_embedding is not None,
                                             "projection": s is not None}])
    # Freyd-style: least fixed point on hom(T, I)
    HTI = hom_poset(T, I, strict=True, check=False)
    g = _endo_on_hom(HTI, lambda h: tau.then(F.mor(h)).then(iota))
    h = HTI.to_map(fp.pataraia_lfp(g).value)
    HII = hom_poset(I, I, strict=True, check=False)
    f = _endo_on_hom(HII, lambda k: iota_inv.then(F.mor(k)).then(iota))
    if HII.to_map(fp.pataraia_lfp(f).value) != po.identity_map(I):
        raise InternalInvariant("mu f is not the identity on I")
    pre = po.PosetMap(HII.poset, HTI.poset,
                      {k: h.then(HII.to_map(k)).key() for k in HII.poset})
    transfer = fp.check_mu_transfer(f, g, pre)
    ok = (is_identity(e.then(h)) and is_identity(h.then(e)) and transfer.passed
          and tau.then(F.mor(h)) == h.then(iota_inv))
    return Certificate(
        command="initial-terminal",
        outcome=PASS if ok else FAIL,
        witnesses={"initial_stage": ic.stage, "terminal_stage": tc.stage,
                   "initial_carrier": [encode(x) for x in I],
                   "terminal_carrier": [encode(x) for x in T],
                   "e": _graph(e), "h": _graph(h), "transfer": transfer.outcome},
    )


def projection_candidate_left(p):
    """An embedding ``s`` with projection ``p`` (``p . s = id``, ``s . p <= id``), or ``None``.

    The embedding is left adjoint to ``p``: ``s(x) = min {y : x <= p y}``.
    """
    A, B = p.cod, p.dom
    out = {}
    for x in A:
        above = [y for y in B if A.leq(x, p(y))]
        least = po.least(B, above) if above else None
        if least is None:
            return None
        out[x] = least
    try:
        s = po.PosetMap(A, B, out)
    except MonotonicityViolation:
        return None
    if is_identity(s.then(p)) and p.then(s).below(po.identity_map(B)):
        return s
    return None
