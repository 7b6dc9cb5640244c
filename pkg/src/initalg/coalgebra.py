"""Algebras, coalgebras and hylomorphisms for the finite functor grammar.

A coalgebra ``g: C -> F C`` is decided well-founded by acyclicity of its
dependency graph (``x -> y`` when ``y`` is a leaf of ``g(x)``). Well-founded
coalgebras are recursive: the hylomorphism equation ``h = a . F h . g`` is
solved by evaluating children before parents. A cyclic graph only means "not
well-founded"; recursiveness itself is never denied on that basis, and
:func:`brute_force_cta` is the oracle for what actually happens.
"""
import itertools
from collections import deque
from dataclasses import dataclass, field
from graphlib import TopologicalSorter

from . import finset as fs
from .canon import canon_sorted, encode
from .caps import DEFAULT
from .certificate import FAIL, PASS, UNKNOWN, Certificate
from .errors import (CapExceeded, FunctorMismatch, InternalInvariant,
                     NotHomomorphism, NotIso, NotWellFounded)
from .functor import apply_mor, apply_obj


@dataclass(frozen=True, eq=False)
class Algebra:
    functor: object
    carrier: fs.FinSetObj
    structure: fs.FinFn = field(repr=False)

    def __post_init__(self):
        if self.structure.cod != self.carrier:
            raise ValueError("algebra structure must land in the carrier")
        if self.structure.dom != apply_obj(self.functor, self.carrier):
            raise ValueError("algebra structure must be defined on F(carrier)")

    def __call__(self, t):
        return self.structure(t)


@dataclass(frozen=True, eq=False)
class Coalgebra:
    functor: object
    carrier: fs.FinSetObj
    structure: fs.FinFn = field(repr=False)

    def __post_init__(self):
        if self.structure.dom != self.carrier:
            raise ValueError("coalgebra structure must be defined on the carrier")
        if self.structure.cod != apply_obj(self.functor, self.carrier):
            raise ValueError("coalgebra structure must land in F(carrier)")

    def __call__(self, x):
        return self.structure(x)


def coalgebra(F, carrier, structure):
    """Build a coalgebra from a plain dict ``x -> term``."""
    C = carrier if isinstance(carrier, fs.FinSetObj) else fs.FinSetObj(carrier)
    return Coalgebra(F, C, fs.FinFn(C, apply_obj(F, C), dict(structure)))


def algebra(F, carrier, structure):
    """Build an algebra from a dict or a callable on ``F(carrier)``."""
    A = carrier if isinstance(carrier, fs.FinSetObj) else fs.FinSetObj(carrier)
    FA = apply_obj(F, A)
    g = {t: structure(t) for t in FA} if callable(structure) else dict(structure)
    return Algebra(F, A, fs.FinFn(FA, A, g))


# -- dependency graph ----------------------------------------------------------------------

def dependency_graph(c):
    """``x -> sorted children of x`` (powerset nodes point at every member)."""
    return {x: canon_sorted(set(c.functor.support(c(x)))) for x in c.carrier}


def shortest_cycle(graph):
    """A shortest cycle as a tuple ``(x0, .., xk)`` (edges ``xi -> xi+1 -> x0``)
    or ``None``. Ties go to the canonically least start vertex."""
    best = None
    for s in canon_sorted(graph):
        prev = {s: None}
        q = deque([s])
        found = None
        while q and found is None:
            u = q.popleft()
            for v in graph[u]:
                if v == s:
                    found = u
                    break
                if v not in prev:
                    prev[v] = u
                    q.append(v)
        if found is None:
            continue
        path = [found]
        while path[-1] != s:
            path.append(prev[path[-1]])
        cyc = tuple(reversed(path))
        if best is None or len(cyc) < len(best):
            best = cyc
    return best


def evaluation_order(c):
    """Carrier elements with children before parents; raises ``NotWellFounded``."""
    graph = dependency_graph(c)
    cyc = shortest_cycle(graph)
    if cyc is not None:
        raise NotWellFounded(cyc)
    ts = TopologicalSorter()
    for x in canon_sorted(graph):
        ts.add(x, *graph[x])
    return list(ts.static_order())


def is_recursive_wf(c):
    """Well-foundedness of ``c`` (a sufficient condition for recursiveness)."""
    return shortest_cycle(dependency_graph(c)) is None


# -- coalgebra-to-algebra maps ---------------------------------------------------------------

def _same_functor(c, a):
    if c.functor != a.functor:
        raise FunctorMismatch(f"{c.functor} vs {a.functor}")


def cta_defect(h, c, a):
    """First ``x`` with ``h(x) != a(F h (c x))``, or ``None``."""
    F = c.functor
    get = h.graph.__getitem__ if isinstance(h, fs.FinFn) else h.__getitem__
    for x in c.carrier:
        if get(x) != a(F.act(get, c(x))):
            return x
    return None


def is_cta_morphism(h, c, a):
    """Does ``h = a . F h . c`` hold pointwise?"""
    _same_functor(c, a)
    return cta_defect(h, c, a) is None


def solve_hylo(c, a):
    """The unique coalgebra-to-algebra map from a well-founded ``c``."""
    _same_functor(c, a)
    F = c.functor
    h = {}
    for x in evaluation_order(c):
        h[x] = a(F.act(h.__getitem__, c(x)))
    return fs.FinFn(c.carrier, a.carrier, h)


@dataclass(frozen=True)
class CtaSearch:
    """Brute-force classification: ``kind`` is ``none``, ``unique`` or ``multiple``;
    ``maps`` holds up to two witnesses."""

    kind: str
    maps: tuple = ()
    examined: int = 0


def brute_force_cta(c, a, cap=None):
    _same_functor(c, a)
    cap = DEFAULT.brute if cap is None else cap
    n = len(a.carrier) ** len(c.carrier)
    if n > cap:
        raise CapExceeded("|A|^|C| candidate maps", n, cap)
    C = list(c.carrier)
    found = []
    for images in itertools.product(a.carrier.elems, repeat=len(C)):
        h = dict(zip(C, images))
        if cta_defect(h, c, a) is None:
            found.append(fs.FinFn(c.carrier, a.carrier, h))
            if len(found) == 2:
                break
    kind = ("none", "unique", "multiple")[len(found)]
    return CtaSearch(kind, tuple(found), n)


def lift_recursive(c, cap=None):
    """``(F C, F g)``. Well-foundedness of ``c`` must carry over (asserted)."""
    F = c.functor
    FC = apply_obj(F, c.carrier, cap)
    FFC = apply_obj(F, FC, cap)
    lifted = Coalgebra(F, FC, apply_mor(F, c.structure, cap, FC, FFC))
    if is_recursive_wf(c) and not is_recursive_wf(lifted):
        raise InternalInvariant("F-lifting destroyed well-foundedness")
    return lifted


def homomorphism_defect(h, c, d):
    """First ``x`` with ``d(h x) != F h (c x)``, or ``None`` when ``h: c -> d`` is one."""
    F = c.functor
    for x in c.carrier:
        if d(h(x)) != F.act(h.graph.__getitem__, c(x)):
            return x
    return None


def colimit_of_recursive(index, coalgebras, maps):
    """Colimit of a directed diagram of coalgebras, formed on carriers.

    ``maps[(i, j)]`` are carrier maps that must be coalgebra homomorphisms.
    Returns ``(coalgebra, colimit)`` where ``colimit`` carries the injections.
    """
    for (i, j), h in maps.items():
        x = homomorphism_defect(h, coalgebras[i], coalgebras[j])
        if x is not None:
            raise NotHomomorphism((i, j), x)
    F = next(iter(coalgebras.values())).functor
    D = fs.Diagram(index, {i: c.carrier for i, c in coalgebras.items()}, dict(maps))
    colim = fs.directed_colimit(D)
    structure = {}
    for i, c in coalgebras.items():
        inj = colim.injections[i]
        for x in c.carrier:
            z = inj(x)
            t = F.act(inj.graph.__getitem__, c(x))
            if structure.setdefault(z, t) != t:
                raise InternalInvariant(f"induced structure ill-defined at {z!r}")
    result = Coalgebra(F, colim.obj, fs.FinFn(colim.obj, apply_obj(F, colim.obj), structure))
    for i, c in coalgebras.items():
        if homomorphism_defect(colim.injections[i], c, result) is not None:
            raise InternalInvariant("colimit injection is not a homomorphism")
    if all(is_recursive_wf(c) for c in coalgebras.values()) and not is_recursive_wf(result):
        raise InternalInvariant("colimit of well-founded coalgebras is not well-founded")
    return result, colim


def recursive_fixed_point_is_initial(c, algebras=(), cap=None):
    """Invert the structure of a well-founded coalgebra with bijective structure
    and test initiality of the resulting algebra against ``algebras``.

    For each test algebra the hylomorphism must be the only coalgebra-to-algebra
    map (brute-force oracle, when within cap) and an algebra homomorphism.
    """
    FC = apply_obj(c.functor, c.carrier, cap)
    if len(FC) != len(c.carrier) or not fs.is_mono(c.structure):
        raise NotIso("coalgebra structure is not a bijection")
    inv = fs.invert(fs.FinFn(c.carrier, FC, c.structure.graph))
    order = evaluation_order(c)
    initial = Algebra(c.functor, c.carrier, inv)
    rows = []
    ok = True
    for k, a in enumerate(algebras):
        h = solve_hylo(c, a)
        # algebra homomorphism: h . inv = a . F h
        Fh = apply_mor(c.functor, h, cap, FC)
        hom = all(h(inv(t)) == a(Fh(t)) for t in FC)
        try:
            oracle = brute_force_cta(c, a, cap)
            unique = oracle.kind == "unique" and oracle.maps[0] == h
            kind = oracle.kind
        except CapExceeded:
            unique, kind = None, "not searched"
        ok = ok and hom and unique is not False
        rows.append({"algebra": k, "homomorphism": hom, "oracle": kind,
                     "map": [[encode(x), encode(h(x))] for x in c.carrier]})
    cert = Certificate(
        command="recursive-fixed-point",
        outcome=PASS if ok else FAIL,
        witnesses={"order": [encode(x) for x in order], "checks": rows},
        notes=["initial with respect to the tested family of algebras"],
    )
    return initial, cert


def hylo_certificate(c, a, cap=None):
    """The ``hylo`` command: solve when well-founded, otherwise consult the oracle.

    Pass: well-founded, with ``h`` and an evaluation order as witnesses.
    Fail: not well-founded and two distinct coalgebra-to-algebra maps exist.
    Unknown: not well-founded, and the oracle found at most one map or was
    out of cap (neither settles recursiveness).
    """
    _same_functor(c, a)
    graph = dependency_graph(c)
    cyc = shortest_cycle(graph)
    if cyc is None:
        order = evaluation_order(c)
        h = solve_hylo(c, a)
        return Certificate(command="hylo", outcome=PASS, witnesses={
            "h": [[encode(x), encode(h(x))] for x in c.carrier],
            "order": [encode(x) for x in order]})
    wit = {"cycle": [encode(x) for x in cyc]}
    try:
        search = brute_force_cta(c, a, cap)
    except CapExceeded as e:
        return Certificate(command="hylo", outcome=UNKNOWN, witnesses=wit,
                           notes=[f"not well-founded; oracle refused: {e}"])
    wit["oracle"] = search.kind
    wit["maps"] = [[[encode(x), encode(h(x))] for x in c.carrier] for h in search.maps]
    if search.kind == "multiple":
        return Certificate(command="hylo", outcome=FAIL, witnesses=wit,
                           counterexamples=[{"reason": "two coalgebra-to-algebra maps"}])
    return Certificate(command="hylo", outcome=UNKNOWN, witnesses=wit,
                       notes=["not well-founded; this algebra alone does not decide recursiveness"])

