"""Two constructions of the initial algebra and their cross-validation.

* The initial-algebra chain ``W_0 = 0``, ``W_{j+1} = F W_j`` with connecting
  maps ``w_{j+1,j+2} = F w_{j,j+1}``, run for finitely many stages. It
  converges at ``l`` when ``w_{l,l+1}`` is a bijection, and then
  ``(W_l, w_{l,l+1}^-1)`` is the initial algebra.
* Inside a pre-fixed point ``m: F A >-> A``: the least fixed point ``I`` of
  ``S |-> image(m . F incl_S)`` on the subset lattice of ``A`` carries the
  initial algebra, with structure read off by inverting ``m . F incl_I``.
"""
from dataclasses import dataclass, field

from . import finset as fs
from . import fixpoint as fp
from . import poset as po
from .canon import encode
from .certificate import FAIL, PASS, UNKNOWN, Certificate
from .coalgebra import (Algebra, Coalgebra, evaluation_order, is_recursive_wf,
                        solve_hylo)
from .errors import CapExceeded, InternalInvariant, NotConverged, NotMono
from .functor import apply_mor, apply_obj

CONVERGED = "converged"
EXHAUSTED = "exhausted"


def _graph(f):
    return [[encode(x), encode(y)] for x, y in f.pairs()]


@dataclass
class ChainState:
    """Stages ``W_0 .. W_n`` of the chain and connectors ``w_{j,j+1}`` for ``j < n``."""

    functor: object
    objects: list
    connectors: list
    status: str
    stage: int = None              # convergence stage when converged
    inverse: fs.FinFn = field(default=None, repr=False)
    reason: str = ""

    @property
    def converged(self):
        return self.status == CONVERGED

    def sizes(self):
        return [len(W) for W in self.objects]


def initial_chain(F, budget, cap=None):
    """Run the chain until ``w_{l,l+1}`` is a bijection or ``W_budget`` is reached.

    With budget ``n`` at most ``W_0 .. W_n`` are built, so convergence can be
    detected at stages below ``n``. A cap hit while building ``F W_j`` ends the
    run as exhausted, with the cap named in ``reason``.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    W = [fs.EMPTY]
    w = []
    state = ChainState(F, W, w, EXHAUSTED, reason=f"budget {budget}")
    for j in range(budget):
        try:
            W.append(apply_obj(F, W[j], cap))
            w.append(fs.empty_map(W[1]) if j == 0
                     else apply_mor(F, w[j - 1], cap, W[j], W[j + 1]))
        except CapExceeded as e:
            state.reason = str(e)
            return state
        ok, inv = fs.is_iso(w[j])
        if ok:
            state.status, state.stage, state.inverse = CONVERGED, j, inv
            state.reason = ""
            return state
    return state


def extend_chain(s, more, cap=None):
    """Further stages ``W_{n+1} .. W_{n+more}`` after ``s``, ignoring convergence;
    used to watch isos propagate along the chain."""
    F = s.functor
    W, w = list(s.objects), list(s.connectors)
    for _ in range(more):
        j = len(W) - 1
        W.append(apply_obj(F, W[j], cap))
        w.append(fs.empty_map(W[1]) if j == 0 else apply_mor(F, w[j - 1], cap, W[j], W[j + 1]))
    return W, w


@dataclass
class InitialAlgebraResult:
    """``iota: I -> F I`` is a bijection and ``iota_inv`` the algebra structure."""

    functor: object
    carrier: fs.FinSetObj
    iota: fs.FinFn = field(repr=False)
    iota_inv: fs.FinFn = field(repr=False)
    provenance: str
    embedding: fs.FinFn = field(default=None, repr=False)
    trace: list = field(default_factory=list, repr=False)
    engine: str = ""

    def algebra(self):
        return Algebra(self.functor, self.carrier, self.iota_inv)

    def coalgebra(self):
        return Coalgebra(self.functor, self.carrier, self.iota)


def chain_to_initial_algebra(s):
    if not s.converged:
        raise NotConverged(f"chain {s.status} ({s.reason})")
    F = s.functor
    for i in range(s.stage + 1):
        c = Coalgebra(F, s.objects[i], s.connectors[i])
        if not is_recursive_wf(c):
            raise InternalInvariant(f"chain coalgebra at stage {i} is not well-founded")
    lam = s.stage
    return InitialAlgebraResult(F, s.objects[lam], s.connectors[lam], s.inverse, "chain",
                                trace=s.sizes())


def canonical_cocone(F, a, upto, cap=None):
    """``a_0 = (0 -> A)``, ``a_{i+1} = a . F a_i``; cocone compatibility asserted."""
    W, w = [fs.EMPTY], []
    alphas = [fs.empty_map(a.carrier)]
    for i in range(upto):
        W.append(apply_obj(F, W[i], cap))
        w.append(fs.empty_map(W[1]) if i == 0 else apply_mor(F, w[i - 1], cap, W[i], W[i + 1]))
        Fa = apply_mor(F, alphas[i], cap, W[i + 1])
        alphas.append(Fa.then(a.structure))
        if w[i].then(alphas[i + 1]) != alphas[i]:
            raise InternalInvariant(f"canonical cocone fails at stage {i}")
    return alphas


# -- the subobject construction ------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PreFixedPoint:
    """An algebra ``m: F A -> A`` with ``m`` injective."""

    functor: object
    carrier: fs.FinSetObj
    m: fs.FinFn = field(repr=False)

    def __post_init__(self):
        if not fs.is_mono(self.m):
            raise NotMono("pre-fixed point structure is not injective")
        if self.m.cod != self.carrier or self.m.dom != apply_obj(self.functor, self.carrier):
            raise ValueError("structure must be a map F(A) -> A")

    def algebra(self):
        return Algebra(self.functor, self.carrier, self.m)


def subobject_endomap(p, cap=None):
    """``f(S) = image(m . F incl_S)`` on the subset lattice of ``A``."""
    F, A = p.functor, p.carrier
    L = fs.subobject_lattice(A)

    def f(S):
        incl = fs.inclusion(S, A)
        return frozenset(apply_mor(F, incl, dom=None, cod=p.m.dom).then(p.m).image())

    return po.check_monotone(L.carrier, f)


def _iota(p, I, cap=None):
    """Invert ``m . F incl_I`` on its image, which must be ``I`` itself."""
    F, A = p.functor, p.carrier
    FI = apply_obj(F, I, cap)
    g = apply_mor(F, fs.inclusion(I, A), cap, FI, p.m.dom).then(p.m)
    if g.image() != I.as_set():
        raise InternalInvariant("m . F incl_I does not have image I")
    back = {y: x for x, y in g.graph.items()}
    return fs.FinFn(I, FI, {x: back[x] for x in I})


def initial_algebra_via_subobjects(p, engine="pataraia", cap=None):
    if engine not in ("pataraia", "zermelo"):
        raise ValueError(f"unknown engine {engine!r}")
    F = p.functor
    f = subobject_endomap(p, cap)
    res = fp.pataraia_lfp(f) if engine == "pataraia" else fp.zermelo_lfp(f)
    I = fs.FinSetObj(res.value)
    iota = _iota(p, I, cap)
    ok, inv = fs.is_iso(iota)
    if not ok:
        raise InternalInvariant("iota is not a bijection")
    c = Coalgebra(F, I, iota)
    if not is_recursive_wf(c):
        raise InternalInvariant("iota-coalgebra is not well-founded")
    u = fs.inclusion(I, p.carrier)
    # u is an algebra homomorphism into (A, m): u . iota^-1 = m . F u
    Fu = apply_mor(F, u, cap, inv.dom, p.m.dom)
    if any(u(inv(t)) != p.m(Fu(t)) for t in inv.dom):
        raise InternalInvariant("inclusion of I is not an algebra homomorphism")
    trace = list(fp.zermelo_lfp(f).trace)
    return InitialAlgebraResult(F, I, iota, inv, "subobject", embedding=u,
                                trace=trace, engine=engine)


def verify_chain_stage_identity(p, upto, cap=None):
    """``image(a_j) = f^j(0)`` for ``j <= upto``: the canonical cocone into
    ``(A, m)`` traces exactly the Zermelo iterates on the subset lattice."""
    f = subobject_endomap(p, cap)
    alphas = canonical_cocone(p.functor, p.algebra(), upto, cap)
    S = frozenset()
    rows, bad = [], []
    for j, a in enumerate(alphas):
        img = a.image()
        rows.append(encode(S))
        if img != S:
            bad.append({"stage": j, "image": encode(img), "iterate": encode(S)})
        S = f(S)
    return Certificate(command="stage-identity", outcome=FAIL if bad else PASS,
                       witnesses={"iterates": rows}, counterexamples=bad)


def cross_validate(F, p, budget, engine="pataraia", cap=None):
    """Run both constructions and compare them through hylomorphisms.

    ``phi`` goes from the chain result to the subobject result, ``psi`` back;
    both are unique maps out of well-founded coalgebras, so they must be
    mutually inverse.
    """
    if p.functor != F:
        raise ValueError("pre-fixed point is for a different functor")
    s = initial_chain(F, budget, cap)
    if not s.converged:
        return Certificate(command="cross-validate", outcome=FAIL,
                           witnesses={"chain_sizes": s.sizes(), "budget": budget},
                           counterexamples=[{"reason": "chain did not converge within budget "
                                             "although a pre-fixed point exists"}])
    chain = chain_to_initial_algebra(s)
    sub = initial_algebra_via_subobjects(p, engine, cap)
    phi = solve_hylo(chain.coalgebra(), sub.algebra())
    psi = solve_hylo(sub.coalgebra(), chain.algebra())
    ok = (phi.then(psi) == fs.identity(chain.carrier)
          and psi.then(phi) == fs.identity(sub.carrier))
    stage = verify_chain_stage_identity(p, s.stage + 1, cap)
    ok = ok and stage.passed
    return Certificate(
        command="cross-validate",
        outcome=PASS if ok else FAIL,
        witnesses={
            "stage": s.stage,
            "budget": budget,
            "chain_carrier": [encode(x) for x in chain.carrier],
            "subobject_carrier": [encode(x) for x in sub.carrier],
            "phi": _graph(phi),
            "psi": _graph(psi),
            "iterates": stage.witnesses["iterates"],
            "engine": engine,
        },
        counterexamples=[] if ok else [{"reason": "comparison maps are not mutually inverse"}],
    )


def initial_algebra_certificate(p, engine="pataraia", cap=None):
    r = initial_algebra_via_subobjects(p, engine, cap)
    return Certificate(
        command="initial-algebra",
        outcome=PASS,
        witnesses={
            "carrier": [encode(x) for x in r.carrier],
            "iota": _graph(r.iota),
            "order": [encode(x) for x in evaluation_order(r.coalgebra())],
            "iterates": [encode(S) for S in r.trace],
            "engine": engine,
        },
        notes=["initial among all algebras by the subobject construction; "
               "recheck verifies the bijection, well-foundedness and the iterates"],
    )


def chain_certificate(F, budget, cap=None):
    s = initial_chain(F, budget, cap)
    wit = {"sizes": s.sizes(), "budget": budget}
    if s.converged:
        wit.update(stage=s.stage, carrier=[encode(x) for x in s.objects[s.stage]],
                   inverse=_graph(s.inverse))
        return Certificate(command="chain", outcome=PASS, witnesses=wit)
    return Certificate(command="chain", outcome=UNKNOWN, witnesses=wit,
                       notes=[f"Exhausted: {s.reason}; no limit stages are formed"])
