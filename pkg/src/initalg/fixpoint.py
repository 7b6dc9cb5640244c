"""Least-fixed-point engines for monotone maps on finite posets.

Four routes to the least fixed point, each following a different classical
argument, plus the independent oracles used to cross-check them:

* :func:`kleene_lfp` and :func:`zermelo_lfp` iterate from the bottom;
* :func:`pataraia_lfp` saturates the least subset containing the bottom that
  is closed under ``f`` and directed joins, and takes its maximum;
* :func:`pataraia_via_monoid` goes through the top element of the monoid of
  monotone inflationary maps, which is a zero;
* :func:`tarski_lfp` (meet of pre-fixed points) and :func:`lfp_scan`
  (exhaustive search) are oracles only.

On a finite poset every directed subset contains its own join and every
monotone map preserves directed joins, so a poset with bottom is a dcpo and
monotone maps are continuous. The iterative engines never reach a limit stage.
"""
import itertools
from dataclasses import dataclass, field

from . import poset as po
from .caps import DEFAULT
from .certificate import FAIL, PASS, Certificate
from .canon import encode
from .errors import (CapExceeded, InternalInvariant, NoBottom, NoMaximum,
                     NotACompleteLattice, NoTop, NotStrict,
                     SquareDoesNotCommute, UnitNotBottom)


@dataclass(frozen=True)
class LfpResult:
    value: object
    stages: int
    engine: str
    trace: tuple = field(default=(), compare=False)


def _require_bottom(P):
    b = po.bottom(P)
    if b is None:
        raise NoBottom("poset has no least element")
    return b


def lfp_scan(f):
    """Oracle: the fixed point below all others, by exhaustive scan (or None)."""
    fixed = f.fixed_points()
    return po.least(f.poset, fixed) if fixed else None


def kleene_lfp(f):
    """Iterate ``bot, f bot, f f bot, ...`` until the value repeats."""
    P = f.poset
    x = _require_bottom(P)
    trace = [x]
    stages = 0
    while True:
        y = f(x)
        if y == x:
            return LfpResult(x, stages, "kleene", tuple(trace))
        x = y
        trace.append(x)
        stages += 1
        if stages > len(P):
            raise InternalInvariant("bottom iteration did not stabilize within |P| steps")


def zermelo_lfp(f):
    """Ordinal-indexed iteration ``f^0 = bot``, ``f^(j+1) = f(f^j)``, joins at
    limits, truncated to the finite stages a finite poset can reach.

    Returns the first stage ``j`` with ``f^j = f^(j+1)``. The chain property
    and the bound ``j <= |P|`` are checked on the way.
    """
    P = f.poset
    stages = [_require_bottom(P)]
    while True:
        j = len(stages) - 1
        nxt = f(stages[j])
        if not P.leq(stages[j], nxt):
            raise InternalInvariant(f"iterates not a chain at stage {j}")
        if nxt == stages[j]:
            break
        stages.append(nxt)
        # no limit stage below the first infinite ordinal; |P| bounds the length
        if len(stages) > len(P):
            raise InternalInvariant("more distinct iterates than elements")
    return LfpResult(stages[-1], len(stages) - 1, "zermelo", tuple(stages))


def tarski_lfp(f):
    """Meet of all pre-fixed points ``{x : f x <= x}``; complete lattices only."""
    P = f.poset
    if not po.is_complete_lattice(P):
        bad = po.missing_join(P)
        raise NotACompleteLattice(*(bad or (None, None)))
    pre = [x for x in P if P.leq(f(x), x)]
    m = po.meet(P, pre)
    if m is None:
        raise InternalInvariant("complete lattice without a meet")
    return m


def _closure_step(f, T, cap):
    P = f.poset
    new = {f(x) for x in T}
    for D in po.directed_subsets(P, T, cap=cap):
        j = po.join(P, D)
        if j is not None:
            new.add(j)
    return new - T


def pataraia_closure(f, cap=None):
    """The least subset containing the bottom and closed under ``f`` and under
    joins of its directed subsets, computed by saturation.

    Every member is asserted to be a post-fixed point (``x <= f x``).
    """
    P = f.poset
    T = {_require_bottom(P)}
    cap = DEFAULT.enum if cap is None else cap
    while True:
        new = _closure_step(f, T, cap)
        if not new:
            break
        T |= new
    for x in T:
        if not P.leq(x, f(x)):
            raise InternalInvariant(f"closure member {x!r} is not a post-fixed point")
    return frozenset(T)


def pataraia_lfp(f, cap=None, verify=True):
    """The maximum of :func:`pataraia_closure`.

    With ``verify`` the two facts that make this the least fixed point are
    checked: the maximum is fixed, and the closure lies below every fixed
    point (each down-set of a fixed point is itself closed).
    """
    P = f.poset
    T = pataraia_closure(f, cap)
    p = po.greatest(P, T)
    if p is None:
        raise NoMaximum("closure has no greatest element")
    if f(p) != p:
        raise InternalInvariant(f"closure maximum {p!r} is not fixed")
    if verify:
        for x in f.fixed_points():
            if any(not P.leq(t, x) for t in T):
                raise InternalInvariant(f"closure not below fixed point {x!r}")
    return LfpResult(p, len(T), "pataraia", tuple(po.linear_extension(P.subposet(T))))


# -- ordered monoids -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OrderedMonoid:
    """A monoid on the elements of a finite poset with monotone multiplication."""

    carrier: po.FinPoset
    mul: object
    unit: object

    def verify(self):
        C = self.carrier
        els = list(C)
        for a in els:
            if self.mul(self.unit, a) != a or self.mul(a, self.unit) != a:
                raise InternalInvariant(f"unit law fails at {a!r}")
        for a, b, c in itertools.product(els, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise InternalInvariant(f"associativity fails at {(a, b, c)!r}")
        # monotone in both arguments, checked one argument at a time
        for a in els:
            for b in C.up(a):
                for c in els:
                    if not (C.leq(self.mul(a, c), self.mul(b, c))
                            and C.leq(self.mul(c, a), self.mul(c, b))):
                        raise InternalInvariant(f"multiplication not monotone at {(a, b, c)!r}")
        return self


def monoid_top_zero(M):
    """The top element of a directed-complete monoid whose unit is its bottom.

    Such a carrier is directed (``m . n`` bounds ``m`` and ``n``), so its join
    is a top element, and the top is a zero.
    """
    C = M.carrier
    if po.bottom(C) != M.unit:
        raise UnitNotBottom(f"unit {M.unit!r} is not the least element")
    for m in C:
        for n in C:
            mn = M.mul(m, n)
            if not (C.leq(m, mn) and C.leq(n, mn)):
                raise InternalInvariant("m . n is not an upper bound of m and n")
    t = po.join(C, list(C))
    if t is None:
        raise NoTop("carrier has no join")
    for m in C:
        if M.mul(t, m) != t or M.mul(m, t) != t:
            raise InternalInvariant(f"top is not a zero against {m!r}")
    return t


def inflationary_monoid(P):
    """Monotone inflationary self-maps of ``P`` under composition.

    Maps are tuples of images in the canonical order of ``P``; the order is
    pointwise and the unit is the identity.
    """
    els = list(P)
    idx = {x: i for i, x in enumerate(els)}
    maps = [tuple(m[x] for x in els) for m in po.monotone_maps(P, P, inflationary=True)]
    carrier = po.FinPoset.from_le(
        maps, lambda a, b: all(P.leq(u, v) for u, v in zip(a, b)))

    def mul(a, b):                      # a . b, apply b first
        return tuple(a[idx[y]] for y in b)

    return OrderedMonoid(carrier, mul, tuple(els))


def pataraia_via_monoid(f, cap=None):
    """Least fixed point through the zero of the inflationary-map monoid.

    ``f`` is restricted to its closure ``T`` (where it is inflationary), the
    monoid of monotone inflationary maps on ``T`` is enumerated, and its top
    ``t`` is applied to the bottom. Enumeration is ``|T|^|T|``, hence the cap.
    """
    P = f.poset
    bot = _require_bottom(P)
    cap = DEFAULT.monoid if cap is None else cap
    T = pataraia_closure(f)
    if len(T) > cap:
        raise CapExceeded("monoid carrier |T|", len(T), cap)
    fT = f.restrict(T)
    Q = fT.poset
    M = inflationary_monoid(Q).verify()
    t = monoid_top_zero(M)
    as_tuple = tuple(fT(x) for x in Q)
    if as_tuple not in M.carrier:
        raise InternalInvariant("restriction of f to T is not inflationary")
    if M.mul(as_tuple, t) != t:
        raise InternalInvariant("f . t != t")
    value = t[Q.index(bot)]
    return LfpResult(value, len(M.carrier), "monoid", tuple(Q))


def fixed_point_subdcpo(f, cap=None):
    """The induced poset on the fixed points of ``f``.

    Each directed set ``D`` of fixed points is checked to have its join inside:
    ``f`` restricts to the upper bounds of ``D``, and the least fixed point of
    that restriction is the join of ``D`` among the fixed points.
    """
    P = f.poset
    _require_bottom(P)
    fixed = f.fixed_points()
    S = P.subposet(fixed)
    for D in po.directed_subsets(S, cap=cap):
        w = po.join(P, D)
        W = [y for y in P if P.leq(w, y)]
        if any(not P.leq(w, f(y)) for y in W):
            raise InternalInvariant("f does not preserve the upper bounds of D")
        p = pataraia_lfp(f.restrict(W), cap=cap).value
        if p != po.join(S, D):
            raise InternalInvariant(f"directed set {D!r} has no join among fixed points")
    return S


def check_mu_transfer(f, g, h):
    """Check that a strict map ``h`` with ``g . h = h . f`` sends the least
    fixed point of ``f`` to that of ``g``.

    Returns a certificate. The Pataraia-induction set ``{x : h x <= mu g}`` is
    recorded and its closure properties are checked alongside.
    """
    P, Q = f.poset, g.poset
    if h.dom != P or h.cod != Q:
        raise ValueError("h must map the poset of f to the poset of g")
    if not h.is_strict():
        raise NotStrict("h does not preserve the bottom")
    for x in P:
        if g(h(x)) != h(f(x)):
            raise SquareDoesNotCommute(x)
    mf = pataraia_lfp(f).value
    mg = pataraia_lfp(g).value
    S = [x for x in P if Q.leq(h(x), mg)]
    closed = (po.bottom(P) in S and all(f(x) in S for x in S)
              and all(po.join(P, D) in S for D in po.directed_subsets(P, S)))
    ok = h(mf) == mg and closed
    return Certificate(
        command="mu-transfer",
        outcome=PASS if ok else FAIL,
        witnesses={"mu_f": encode(mf), "mu_g": encode(mg), "h_mu_f": encode(h(mf)),
                   "induction_set": [encode(x) for x in S]},
        counterexamples=[] if ok else [{"h_mu_f": encode(h(mf)), "mu_g": encode(mg)}],
    )
