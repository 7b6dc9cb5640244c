"""Endofunctors on finite sets described by a small grammar.

Every functor here acts on elements through :class:`~initalg.canon.Term`
trees, so ``F X`` is a concrete finite set of terms and ``F f`` relabels the
leaves of a term through ``f``:

==================  ==============================================
grammar node        elements of ``F X``
==================  ==============================================
``Id``              elements of ``X``
``Const(S)``        elements of ``S``
``Container``       ``name[k](x1, .., xn)`` for each constructor
``Sum(F, G)``       ``inl(t)`` / ``inr(t)``
``Product(F, G)``   ``pair(t, u)``
``Compose(F, G)``   ``F`` applied to ``G X``
``FinPowerset``     ``{x1, .., xn}`` (tag ``set``, sorted children)
==================  ==============================================

Because terms are relabelled rather than rebuilt, an inclusion ``S -> X``
sends each term of ``F S`` to the identical term of ``F X``.
"""
import itertools
from dataclasses import dataclass

from .canon import Term, canon_sorted, encode
from .caps import DEFAULT
from .certificate import FAIL, PASS, Certificate
from .errors import CapExceeded, LawViolation
from .finset import FinFn, FinSetObj, identity, is_mono


class FunctorSpec:
    """Base class. Subclasses implement ``size``, ``terms``, ``act`` and ``support``."""

    def size(self, n):
        raise NotImplementedError

    def terms(self, X):
        """Iterate over the elements of ``F X``, for ``X`` an iterable of elements."""
        raise NotImplementedError

    def act(self, f, t):
        """Image of the term ``t`` under ``F f``, where ``f`` is any callable."""
        raise NotImplementedError

    def support(self, t):
        """The leaves of ``t`` (elements of ``X``), with repetitions."""
        raise NotImplementedError


@dataclass(frozen=True)
class Id(FunctorSpec):
    def size(self, n):
        return n

    def terms(self, X):
        return iter(X)

    def act(self, f, t):
        return f(t)

    def support(self, t):
        return [t]

    def __str__(self):
        return "X"


@dataclass(frozen=True)
class Const(FunctorSpec):
    values: FinSetObj

    def size(self, n):
        return len(self.values)

    def terms(self, X):
        return iter(self.values)

    def act(self, f, t):
        return t

    def support(self, t):
        return []

    def __str__(self):
        return "{" + ",".join(map(str, self.values)) + "}"


@dataclass(frozen=True)
class Constructor:
    name: str
    arity: int = 0
    consts: FinSetObj = None     # None: no constant label


@dataclass(frozen=True)
class Container(FunctorSpec):
    """Polynomial functor ``sum_c K_c x X^arity(c)``."""

    constructors: tuple

    def __post_init__(self):
        names = [c.name for c in self.constructors]
        if len(set(names)) != len(names):
            raise ValueError(f"constructor names repeat: {names}")

    def size(self, n):
        return sum((1 if c.consts is None else len(c.consts)) * n ** c.arity
                   for c in self.constructors)

    def terms(self, X):
        X = list(X)
        for c in self.constructors:
            labels = [None] if c.consts is None else list(c.consts)
            for k in labels:
                for args in itertools.product(X, repeat=c.arity):
                    yield Term(c.name, k, args)

    def act(self, f, t):
        return Term(t.tag, t.const, tuple(f(a) for a in t.args))

    def support(self, t):
        return list(t.args)

    def __str__(self):
        parts = []
        for c in self.constructors:
            k = "" if c.consts is None else f"{len(c.consts)}*"
            parts.append(f"{c.name}:{k}X^{c.arity}")
        return "[" + " + ".join(parts) + "]"


@dataclass(frozen=True)
class Sum(FunctorSpec):
    left: FunctorSpec
    right: FunctorSpec

    def size(self, n):
        return self.left.size(n) + self.right.size(n)

    def terms(self, X):
        X = list(X)
        for t in self.left.terms(X):
            yield Term("inl", None, (t,))
        for t in self.right.terms(X):
            yield Term("inr", None, (t,))

    def _side(self, t):
        return self.left if t.tag == "inl" else self.right

    def act(self, f, t):
        return Term(t.tag, None, (self._side(t).act(f, t.args[0]),))

    def support(self, t):
        return self._side(t).support(t.args[0])

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Product(FunctorSpec):
    left: FunctorSpec
    right: FunctorSpec

    def size(self, n):
        return self.left.size(n) * self.right.size(n)

    def terms(self, X):
        X = list(X)
        rights = list(self.right.terms(X))
        for t in self.left.terms(X):
            for u in rights:
                yield Term("pair", None, (t, u))

    def act(self, f, t):
        a, b = t.args
        return Term("pair", None, (self.left.act(f, a), self.right.act(f, b)))

    def support(self, t):
        a, b = t.args
        return self.left.support(a) + self.right.support(b)

    def __str__(self):
        return f"({self.left} x {self.right})"


@dataclass(frozen=True)
class Compose(FunctorSpec):
    """``outer . inner``: ``X`` goes to ``outer(inner(X))``."""

    outer: FunctorSpec
    inner: FunctorSpec

    def size(self, n):
        return self.outer.size(self.inner.size(n))

    def terms(self, X):
        return self.outer.terms(list(self.inner.terms(X)))

    def act(self, f, t):
        return self.outer.act(lambda u: self.inner.act(f, u), t)

    def support(self, t):
        return [x for u in self.outer.support(t) for x in self.inner.support(u)]

    def __str__(self):
        return f"{self.outer}∘{self.inner}"


@dataclass(frozen=True)
class FinPowerset(FunctorSpec):
    def size(self, n):
        return 2 ** n

    def _min_size(self):
        return 0

    def terms(self, X):
        X = canon_sorted(X)
        for r in range(self._min_size(), len(X) + 1):
            for c in itertools.combinations(X, r):
                yield Term("set", None, c)

    def act(self, f, t):
        return Term("set", None, tuple(canon_sorted({f(a) for a in t.args})))

    def support(self, t):
        return list(t.args)

    def __str__(self):
        return "P"


@dataclass(frozen=True)
class NonemptyFinPowerset(FinPowerset):
    def size(self, n):
        return 2 ** n - 1

    def _min_size(self):
        return 1

    def __str__(self):
        return "P0"


def one_plus_x():
    """``F X = 1 + X`` as a container with constructors ``Z`` and ``S``."""
    return Container((Constructor("Z", 0), Constructor("S", 1)))


def const_plus_x(B):
    """``F X = B + X``: constants ``C[b]`` and successor ``S``."""
    B = B if isinstance(B, FinSetObj) else FinSetObj(B)
    return Container((Constructor("C", 0, B), Constructor("S", 1)))


# -- action on objects and maps ------------------------------------------------------------

def apply_obj(F, X, cap=None):
    cap = DEFAULT.obj if cap is None else cap
    n = F.size(len(X))
    if n > cap:
        raise CapExceeded(f"|{F}(X)|", n, cap)
    return FinSetObj(F.terms(X))


def apply_mor(F, f, cap=None, dom=None, cod=None):
    """``F f`` as a :class:`FinFn`. Pre-computed ``F dom`` / ``F cod`` may be passed."""
    FA = apply_obj(F, f.dom, cap) if dom is None else dom
    FB = apply_obj(F, f.cod, cap) if cod is None else cod
    return FinFn(FA, FB, {t: F.act(f.graph.__getitem__, t) for t in FA})


def _graph(f):
    return [[encode(x), encode(y)] for x, y in f.pairs()]


def check_functor_laws(F, samples, cap=None):
    """Check ``F id = id`` and ``F(g . f) = F g . F f`` on composable pairs ``(f, g)``."""
    checked = 0
    for f, g in samples:
        if f.cod != g.dom:
            raise ValueError("sample pair is not composable")
        for X in (f.dom, f.cod, g.cod):
            FX = apply_obj(F, X, cap)
            Fid = apply_mor(F, identity(X), cap, FX, FX)
            if Fid != identity(FX):
                bad = next(t for t in FX if Fid(t) != t)
                raise LawViolation("identity", {"object": [encode(x) for x in X],
                                                "term": encode(bad), "image": encode(Fid(bad))})
        lhs = apply_mor(F, f.then(g), cap)
        rhs = apply_mor(F, f, cap).then(apply_mor(F, g, cap))
        if lhs != rhs:
            bad = next(t for t in lhs.dom if lhs(t) != rhs(t))
            raise LawViolation("composition", {"term": encode(bad), "F(g.f)": encode(lhs(bad)),
                                               "Fg.Ff": encode(rhs(bad))})
        checked += 1
    return Certificate(command="functor-laws", outcome=PASS,
                       witnesses={"functor": str(F), "pairs_checked": checked})


def check_mono_preservation(F, samples, cap=None):
    """Report whether ``F m`` is injective for each injective sample ``m``."""
    bad = []
    for m in samples:
        if not is_mono(m):
            raise ValueError("sample is not injective")
        Fm = apply_mor(F, m, cap)
        if not is_mono(Fm):
            seen = {}
            for t in Fm.dom:
                if Fm(t) in seen:
                    bad.append({"map": _graph(m), "terms": [encode(seen[Fm(t)]), encode(t)]})
                    break
                seen[Fm(t)] = t
    return Certificate(command="mono-preservation", outcome=FAIL if bad else PASS,
                       witnesses={"functor": str(F), "samples": len(samples)},
                       counterexamples=bad)
