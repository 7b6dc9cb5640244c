"""Directed joins of finite metric subspaces, with exact rational distances.

A family member is an injective non-expanding map ``m_i: (A_i, d_i) -> (A, d)``.
Member ``i`` sits below ``j`` when ``m_i`` factors through ``m_j`` by a
non-expanding map. The join carries the union of the images with

    d'(x, y) = min { d_i(x', y') : m_i(x') = x, m_i(y') = y }

(an infimum in general, a minimum over a finite family).
"""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .canon import canon_sorted, encode
from .certificate import FAIL, PASS, Certificate
from .errors import InternalInvariant, NotAMetric, NotDirected, NotNonExpanding


def _q(v):
    return v if isinstance(v, Fraction) else Fraction(v)


@dataclass(frozen=True, eq=False)
class FiniteMetric:
    """Points and a symmetric distance table with values in ``[0, 1]``."""

    points: tuple
    dist: dict = field(repr=False)      # frozenset({x, y}) -> Fraction, x != y

    def d(self, x, y):
        return Fraction(0) if x == y else self.dist[frozenset((x, y))]

    def check(self):
        """Metric axioms, exactly: positivity off the diagonal, range, triangle."""
        for x, y in itertools.combinations(self.points, 2):
            v = self.d(x, y)
            if not 0 < v <= 1:
                raise NotAMetric(f"d({x},{y}) = {v} outside (0, 1]")
        for x, y, z in itertools.product(self.points, repeat=3):
            if self.d(x, z) > self.d(x, y) + self.d(y, z):
                raise NotAMetric(f"triangle fails at {x},{y},{z}")
        return self


def metric(points, table):
    """Build a :class:`FiniteMetric` from ``{(x, y): value}`` (one orientation suffices)."""
    dist = {}
    for (x, y), v in table.items():
        if x == y:
            continue
        k = frozenset((x, y))
        v = _q(v)
        if dist.setdefault(k, v) != v:
            raise NotAMetric(f"d({x},{y}) is not symmetric")
    pts = tuple(canon_sorted(points))
    for x, y in itertools.combinations(pts, 2):
        if frozenset((x, y)) not in dist:
            raise NotAMetric(f"d({x},{y}) missing")
    return FiniteMetric(pts, dist)


@dataclass(frozen=True, eq=False)
class Member:
    name: str
    space: FiniteMetric
    m: dict                               # point of the member -> point of the ambient


@dataclass
class MetricJoin:
    space: FiniteMetric
    realizers: dict                       # frozenset({x, y}) -> (member, x', y')
    order: dict                           # (i, j) -> bool, member i below member j


def _non_expanding(src, dst, f):
    for x, y in itertools.combinations(src.points, 2):
        if dst.d(f[x], f[y]) > src.d(x, y):
            return x, y
    return None


def _factor(a, b):
    """``a`` below ``b``: the map ``m_b^-1 . m_a``, when it exists and does not expand."""
    back = {v: k for k, v in b.m.items()}
    if not set(a.m.values()) <= back.keys():
        return None
    f = {x: back[a.m[x]] for x in a.space.points}
    return f if _non_expanding(a.space, b.space, f) is None else None


def metric_directed_join(ambient, members):
    ambient.check()
    if not members:
        raise NotDirected()
    for mem in members:
        mem.space.check()
        if len(set(mem.m.values())) != len(mem.m):
            raise NotAMetric(f"member {mem.name} is not injective")
        bad = _non_expanding(mem.space, ambient, mem.m)
        if bad:
            raise NotNonExpanding(*bad)
    order = {(a.name, b.name): _factor(a, b) is not None for a in members for b in members}
    for a, b in itertools.combinations(members, 2):
        if not any(order[(a.name, c.name)] and order[(b.name, c.name)] for c in members):
            raise NotDirected(a.name, b.name)
    union = canon_sorted({v for mem in members for v in mem.m.values()})
    dist, real = {}, {}
    for x, y in itertools.combinations(union, 2):
        best = None
        for mem in members:
            back = {v: k for k, v in mem.m.items()}
            if x in back and y in back:
                v = mem.space.d(back[x], back[y])
                if best is None or v < best[0]:
                    best = (v, mem.name, back[x], back[y])
        if best is None:
            raise InternalInvariant(f"{x},{y} not realized together in any member")
        dist[frozenset((x, y))] = best[0]
        real[frozenset((x, y))] = best[1:]
    B = FiniteMetric(tuple(union), dist)
    B.check()
    for x, y in itertools.combinations(union, 2):
        if B.d(x, y) < ambient.d(x, y):
            raise InternalInvariant("d' below d")
    for mem in members:
        bad = _non_expanding(mem.space, B, mem.m)
        if bad:
            raise NotNonExpanding(*bad)
    return MetricJoin(B, real, order)


def maximum_member(members, order):
    for c in members:
        if all(order[(a.name, c.name)] for a in members):
            return c
    return None


def metric_join_certificate(ambient, members):
    J = metric_directed_join(ambient, members)
    top = maximum_member(members, J.order)
    agrees = None
    if top is not None:
        agrees = all(J.space.d(top.m[x], top.m[y]) == top.space.d(x, y)
                     for x, y in itertools.combinations(top.space.points, 2))
    table = [[encode(x), encode(y), str(J.space.d(x, y))] + [encode(v) for v in J.realizers[frozenset((x, y))]]
             for x, y in itertools.combinations(J.space.points, 2)]
    return Certificate(
        command="metric-join",
        outcome=FAIL if agrees is False else PASS,
        witnesses={"carrier": [encode(x) for x in J.space.points], "distances": table,
                   "maximum": top.name if top else None, "matches_maximum": agrees},
        counterexamples=[] if agrees is not False else [{"reason": "d' differs from the maximum member"}],
    )
