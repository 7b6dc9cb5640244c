"""Finite partial orders, monotone maps, directed subsets and joins.

A :class:`FinPoset` stores its order as one bitmask per element (the up-set),
so joins and bound computations are a handful of integer operations. Elements
may be any value ``canon_key`` understands; they are kept in canonical order.
"""
import itertools
import random
from dataclasses import dataclass, field

from .canon import canon_key, canon_sorted
from .caps import DEFAULT
from .errors import (AntisymmetryViolation, CapExceeded, DuplicateElement,
                     MonotonicityViolation, NotStrict, NotTotal,
                     TransitivityViolation, UnknownElement)


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinPoset:
    """A finite partial order. Build one with :func:`validate_poset` or
    :meth:`FinPoset.from_le`; instances are immutable."""

    __slots__ = ("elems", "_index", "_up", "_down", "_hash")

    def __init__(self, elems, up):
        self.elems = tuple(elems)
        self._index = {x: i for i, x in enumerate(self.elems)}
        self._up = tuple(up)
        down = [0] * len(self.elems)
        for i, m in enumerate(self._up):
            for j in _bits(m):
                down[j] |= 1 << i
        self._down = tuple(down)
        self._hash = None

    @classmethod
    def from_le(cls, elems, le, check=False):
        """Order ``elems`` by the predicate ``le``.

        With ``check=True`` the three order axioms are verified; otherwise the
        caller vouches for them (inclusion, pointwise order, ...).
        """
        elems = canon_sorted(elems)
        if len(set(elems)) != len(elems):
            seen = set()
            for x in elems:
                if x in seen:
                    raise DuplicateElement(x)
                seen.add(x)
        up = []
        for x in elems:
            m = 0
            for j, y in enumerate(elems):
                if x == y or le(x, y):
                    m |= 1 << j
            up.append(m)
        P = cls(elems, up)
        if check:
            _check_axioms(P)
        return P

    # -- basic queries ---------------------------------------------------------
    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x):
        return x in self._index

    def __eq__(self, other):
        return (isinstance(other, FinPoset) and self.elems == other.elems
                and self._up == other._up)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.elems, self._up))
        return self._hash

    def __repr__(self):
        return f"FinPoset({len(self)} elements)"

    def index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise UnknownElement(x) from None

    def leq(self, x, y):
        return bool(self._up[self.index(x)] >> self.index(y) & 1)

    def lt(self, x, y):
        return x != y and self.leq(x, y)

    def up(self, x):
        return [self.elems[j] for j in _bits(self._up[self.index(x)])]

    def down(self, x):
        return [self.elems[j] for j in _bits(self._down[self.index(x)])]

    def pairs(self):
        """The order relation as a set of pairs (reflexive pairs included)."""
        return {(self.elems[i], self.elems[j])
                for i, m in enumerate(self._up) for j in _bits(m)}

    def covers(self):
        """Pairs x < y with nothing strictly in between (the Hasse diagram)."""
        out = []
        for i, m in enumerate(self._up):
            strict = m & ~(1 << i)
            for j in _bits(strict):
                between = strict & self._down[j] & ~(1 << j)
                if not between:
                    out.append((self.elems[i], self.elems[j]))
        return out

    def mask(self, S):
        m = 0
        for x in S:
            m |= 1 << self.index(x)
        return m

    def subposet(self, S):
        """The induced order on the subset ``S``."""
        S = canon_sorted(set(S))
        idx = [self.index(x) for x in S]
        up = []
        for i in idx:
            m = 0
            for k, j in enumerate(idx):
                if self._up[i] >> j & 1:
                    m |= 1 << k
            up.append(m)
        return FinPoset(S, up)

    # -- mask helpers used by the bound computations ------------------------------
    def _upper_mask(self, S):
        m = (1 << len(self.elems)) - 1
        for x in S:
            m &= self._up[self.index(x)]
        return m

    def _lower_mask(self, S):
        m = (1 << len(self.elems)) - 1
        for x in S:
            m &= self._down[self.index(x)]
        return m

    def _least_in(self, mask):
        for i in _bits(mask):
            if self._up[i] & mask == mask:
                return self.elems[i]
        return None

    def _greatest_in(self, mask):
        for i in _bits(mask):
            if self._down[i] & mask == mask:
                return self.elems[i]
        return None


def _check_axioms(P):
    n = len(P)
    for i in range(n):
        for j in _bits(P._up[i] & ~(1 << i)):
            if P._up[j] >> i & 1:
                raise AntisymmetryViolation(P.elems[i], P.elems[j])
    for i in range(n):
        for j in _bits(P._up[i]):
            missing = P._up[j] & ~P._up[i]
            if missing:
                k = next(_bits(missing))
                raise TransitivityViolation(P.elems[i], P.elems[j], P.elems[k])


def validate_poset(raw, raw_leq):
    """Build a poset from an element list and a list of ``(x, y)`` pairs.

    The relation is closed reflexively but not transitively: a missing
    transitive pair is reported rather than silently added.
    """
    elems = list(raw)
    seen = set()
    for x in elems:
        if x in seen:
            raise DuplicateElement(x)
        seen.add(x)
    rel = set()
    for x, y in raw_leq:
        for z in (x, y):
            if z not in seen:
                raise UnknownElement(z)
        rel.add((x, y))
    elems = canon_sorted(elems)
    index = {x: i for i, x in enumerate(elems)}
    up = [1 << i for i in range(len(elems))]
    for x, y in rel:
        up[index[x]] |= 1 << index[y]
    P = FinPoset(elems, up)
    _check_axioms(P)
    return P


# -- small named posets ------------------------------------------------------------

def chain(*elems):
    """The total order ``elems[0] < elems[1] < ...``."""
    pos = {x: i for i, x in enumerate(elems)}
    return FinPoset.from_le(elems, lambda x, y: pos[x] <= pos[y])


def antichain(*elems):
    return FinPoset.from_le(elems, lambda x, y: x == y)


def add_bottom(P, bot="⊥"):
    """``P`` with a fresh least element ``bot`` adjoined."""
    if bot in P:
        raise DuplicateElement(bot)
    return FinPoset.from_le(list(P) + [bot],
                            lambda x, y: x == bot or (y != bot and P.leq(x, y)))


def product(P, Q, pair=lambda x, y: (x, y)):
    """Componentwise order on ``P x Q``; ``pair`` builds the element labels."""
    elems = {pair(x, y): (x, y) for x in P for y in Q}
    return FinPoset.from_le(
        elems, lambda a, b: P.leq(elems[a][0], elems[b][0]) and Q.leq(elems[a][1], elems[b][1]))


# -- bounds, joins, directedness ---------------------------------------------------

def bottom(P):
    return P._least_in((1 << len(P)) - 1) if len(P) else None


def top(P):
    return P._greatest_in((1 << len(P)) - 1) if len(P) else None


def upper_bounds(P, S):
    return [P.elems[i] for i in _bits(P._upper_mask(S))]


def lower_bounds(P, S):
    return [P.elems[i] for i in _bits(P._lower_mask(S))]


def join(P, S):
    """Least upper bound of ``S`` or ``None``. The join of the empty set is the
    bottom element, when there is one."""
    return P._least_in(P._upper_mask(S))


def meet(P, S):
    return P._greatest_in(P._lower_mask(S))


def greatest(P, S):
    """The element of ``S`` above every element of ``S``, if any."""
    return P._greatest_in(P.mask(S))


def least(P, S):
    return P._least_in(P.mask(S))


def is_directed(P, S):
    """Nonempty, and every pair in ``S`` has an upper bound inside ``S``."""
    S = list(S)
    if not S:
        return False
    m = P.mask(S)
    for a, b in itertools.combinations(S, 2):
        if not (P._up[P.index(a)] & P._up[P.index(b)] & m):
            return False
    return True


def directed_subsets(P, S=None, cap=None):
    """Yield every directed subset of ``S`` (default: all of ``P``) as a tuple.

    Enumeration is exhaustive over the 2^|S| subsets, so ``|S|`` is capped.
    """
    S = list(P) if S is None else canon_sorted(set(S))
    cap = DEFAULT.enum if cap is None else cap
    if len(S) > cap:
        raise CapExceeded("directed-subset enumeration", len(S), cap)
    for r in range(1, len(S) + 1):
        for D in itertools.combinations(S, r):
            if is_directed(P, D):
                yield D


def is_complete_lattice(P):
    """Finite ``P`` is a complete lattice iff it has a bottom and binary joins
    (then every subset, the empty one included, has a join)."""
    if not len(P) or bottom(P) is None:
        return False
    return all(join(P, (a, b)) is not None for a, b in itertools.combinations(P, 2))


def missing_join(P):
    """A pair without a join, or ``None`` when every pair has one."""
    for a, b in itertools.combinations(P, 2):
        if join(P, (a, b)) is None:
            return a, b
    return None


# -- maps ------------------------------------------------------------------------------

def _check_total(dom, cod, f):
    for x in dom:
        if x not in f:
            raise NotTotal(x)
        if f[x] not in cod:
            raise UnknownElement(f[x])


def _first_violation(dom, cod, f):
    for x in dom:
        for y in dom.up(x):
            if not cod.leq(f[x], f[y]):
                return x, y
    return None


def is_monotone(dom, cod, f):
    return _first_violation(dom, cod, f) is None


@dataclass(frozen=True, eq=False)
class PosetMap:
    """A monotone map between finite posets, optionally required to be strict."""

    dom: FinPoset
    cod: FinPoset
    map: dict
    strict: bool = False

    def __post_init__(self):
        _check_total(self.dom, self.cod, self.map)
        bad = _first_violation(self.dom, self.cod, self.map)
        if bad:
            raise MonotonicityViolation(*bad)
        if self.strict and not self.is_strict():
            raise NotStrict(f"{bottom(self.dom)!r} is not sent to {bottom(self.cod)!r}")

    def __call__(self, x):
        return self.map[x]

    def __eq__(self, other):
        return (isinstance(other, PosetMap) and self.dom == other.dom
                and self.cod == other.cod and self.map == other.map)

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Images in the canonical order of ``dom``; identifies the map."""
        return tuple(self.map[x] for x in self.dom)

    def is_strict(self):
        b = bottom(self.dom)
        return b is not None and self.map[b] == bottom(self.cod)

    def then(self, g):
        """``g . self``."""
        return PosetMap(self.dom, g.cod, {x: g.map[self.map[x]] for x in self.dom})

    def below(self, g):
        """Pointwise order ``self <= g``."""
        return all(self.cod.leq(self.map[x], g.map[x]) for x in self.dom)


def identity_map(P):
    return PosetMap(P, P, {x: x for x in P})


def compose(g, f):
    """``g . f`` for poset maps."""
    return f.then(g)


@dataclass(frozen=True, eq=False)
class MonotoneEndo:
    """A monotone self-map of a finite poset."""

    poset: FinPoset
    map: dict = field(repr=False)

    def __post_init__(self):
        _check_total(self.poset, self.poset, self.map)
        bad = _first_violation(self.poset, self.poset, self.map)
        if bad:
            raise MonotonicityViolation(*bad)

    def __call__(self, x):
        return self.map[x]

    def restrict(self, S):
        """Restriction to the induced subposet on ``S`` (which ``f`` must preserve)."""
        Q = self.poset.subposet(S)
        return MonotoneEndo(Q, {x: self.map[x] for x in Q})

    def fixed_points(self):
        return [x for x in self.poset if self.map[x] == x]


def check_monotone(P, f):
    """Wrap a total map as a :class:`MonotoneEndo`, reporting the first pair
    (in canonical order) whose images are out of order."""
    if callable(f) and not isinstance(f, dict):
        f = {x: f(x) for x in P}
    return MonotoneEndo(P, dict(f))


# -- enumeration -----------------------------------------------------------------------

def linear_extension(P):
    """Elements of ``P`` listed so that ``x < y`` implies ``x`` comes first."""
    return sorted(P, key=lambda x: (len(P.down(x)), canon_key(x)))


def monotone_maps(P, Q, strict=False, inflationary=False, below_identity=False):
    """Yield every monotone map ``P -> Q`` as a dict.

    ``inflationary`` (``x <= f x``) and ``below_identity`` (``f x <= x``) need
    ``Q`` to be ``P``.
    """
    order = linear_extension(P)
    preds = {x: [p for p in P.down(x) if p != x] for x in order}
    bP, bQ = bottom(P), bottom(Q)
    if strict and (bP is None or bQ is None):
        return
    cand = {}
    for x in order:
        cs = list(Q)
        if strict and x == bP:
            cs = [bQ]
        if inflationary:
            cs = [y for y in cs if P.leq(x, y)]
        if below_identity:
            cs = [y for y in cs if P.leq(y, x)]
        cand[x] = cs
    assign = {}

    def rec(k):
        if k == len(order):
            yield dict(assign)
            return
        x = order[k]
        for y in cand[x]:
            if all(Q.leq(assign[p], y) for p in preds[x]):
                assign[x] = y
                yield from rec(k + 1)
        assign.pop(x, None)

    yield from rec(0)


def _canonical_form(n, rel):
    best = None
    for perm in itertools.permutations(range(n)):
        form = tuple(sorted((perm[a], perm[b]) for a, b in rel))
        if best is None or form < best:
            best = form
    return best


def all_posets(n, labels=None):
    """Every poset on ``n`` elements up to isomorphism (practical for n <= 5).

    Elements are the strings ``"0" .. "n-1"`` unless ``labels`` is given.
    """
    labels = [str(i) for i in range(n)] if labels is None else list(labels)
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    out = []
    for bits in range(1 << len(pairs)):
        rel = [pairs[k] for k in range(len(pairs)) if bits >> k & 1]
        rs = set(rel)
        if any((a, c) not in rs for a, b in rel for b2, c in rel if b == b2):
            continue
        form = _canonical_form(n, rel)
        if form in seen:
            continue
        seen.add(form)
        out.append(validate_poset(labels, [(labels[a], labels[b]) for a, b in rel]))
    return out


def random_poset(n, rng=None, density=0.35, labels=None):
    """A random poset: a random DAG on a fixed linear order, closed transitively."""
    rng = rng or random.Random()
    labels = [str(i) for i in range(n)] if labels is None else list(labels)
    reach = [1 << i for i in range(n)]
    for i in reversed(range(n)):
        for j in range(i + 1, n):
            if rng.random() < density:
                reach[i] |= reach[j]
    return validate_poset(labels, [(labels[i], labels[j]) for i in range(n)
                                   for j in range(n) if i != j and reach[i] >> j & 1])


def random_monotone_map(P, Q, rng=None, strict=False):
    """A random monotone map ``P -> Q`` (dict), or ``None`` if none exists."""
    rng = rng or random.Random()
    order = linear_extension(P)
    preds = {x: [p for p in P.down(x) if p != x] for x in order}
    bP, bQ = bottom(P), bottom(Q)
    assign = {}

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        cs = list(Q)
        if strict and x == bP:
            cs = [bQ] if bQ is not None else []
        rng.shuffle(cs)
        for y in cs:
            if all(Q.leq(assign[p], y) for p in preds[x]):
                assign[x] = y
                if rec(k + 1):
                    return True
        assign.pop(x, None)
        return False

    return dict(assign) if rec(0) else None
