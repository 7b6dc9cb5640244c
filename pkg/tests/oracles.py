"""Brute-force oracles, written against raw relations and dicts.

These deliberately avoid the library's algorithms (bitmask joins, engines,
saturation, topological sorting) so that agreement means something. They use
only ``P.leq``, element iteration and the library's data containers.
"""
import itertools
from fractions import Fraction


def leq_table(P):
    return {(x, y) for x in P for y in P if P.leq(x, y)}


def least_of(P, S):
    S = list(S)
    for x in S:
        if all(P.leq(x, y) for y in S):
            return x
    return None


def greatest_of(P, S):
    S = list(S)
    for x in S:
        if all(P.leq(y, x) for y in S):
            return x
    return None


def join_of(P, S):
    ubs = [u for u in P if all(P.leq(s, u) for s in S)]
    return least_of(P, ubs)


def meet_of(P, S):
    lbs = [u for u in P if all(P.leq(u, s) for s in S)]
    return greatest_of(P, lbs)


def bottom_of(P):
    return least_of(P, list(P))


def lfp(P, f):
    """The fixed point below every fixed point, or None."""
    return least_of(P, [x for x in P if f(x) == x])


def is_complete_lattice(P):
    els = list(P)
    for r in range(len(els) + 1):
        for S in itertools.combinations(els, r):
            if join_of(P, S) is None:
                return False
    return bool(els)


def subsets(xs):
    xs = list(xs)
    for r in range(len(xs) + 1):
        yield from itertools.combinations(xs, r)


def directed(P, S):
    return bool(S) and all(any(P.leq(a, c) and P.leq(b, c) for c in S) for a in S for b in S)


def all_maps(P, Q):
    P, Q = list(P), list(Q)
    for images in itertools.product(Q, repeat=len(P)):
        yield dict(zip(P, images))


def monotone(P, Q, m):
    return all(Q.leq(m[x], m[y]) for x in P for y in P if P.leq(x, y))


def monotone_maps(P, Q):
    return [m for m in all_maps(P, Q) if monotone(P, Q, m)]


def cta_maps(c, a):
    """Every h with h = a . F h . c, by enumeration of all |A|^|C| functions."""
    F = c.functor
    out = []
    for h in all_maps(list(c.carrier), list(a.carrier)):
        if all(h[x] == a(F.act(h.__getitem__, c(x))) for x in c.carrier):
            out.append(h)
    return out


def reachable_cycle(c):
    """True when some element reaches itself through the dependency relation."""
    F = c.functor
    kids = {x: set(F.support(c(x))) for x in c.carrier}
    for s in c.carrier:
        seen, stack = set(), list(kids[s])
        while stack:
            y = stack.pop()
            if y == s:
                return True
            if y not in seen:
                seen.add(y)
                stack.extend(kids[y])
    return False


def idempotents_below_identity(A):
    out = []
    for m in monotone_maps(A, A):
        if all(A.leq(m[x], x) for x in A) and all(m[m[x]] == m[x] for x in A):
            out.append(m)
    return out


def metric_join(members):
    """d'(x, y) = min over members realizing both points."""
    d = {}
    for mem in members:
        for a, b in itertools.combinations(mem.space.points, 2):
            k = frozenset((mem.m[a], mem.m[b]))
            v = Fraction(mem.space.d(a, b))
            d[k] = min(d.get(k, v), v)
    return d
