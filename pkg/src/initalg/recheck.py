"""Re-verification of certificates by direct evaluation.

Nothing here enumerates maps, subsets or test objects. Each check evaluates
the equations the witnesses are supposed to satisfy, so a recheck costs about
as much as reading the inputs. The result is itself a :class:`Certificate`
whose counterexamples name the first failing equation instances.
"""
import itertools
import os
from fractions import Fraction

from . import dcpo as dc
from . import finset as fs
from . import initial as ia
from . import metric as mt
from . import poset as po
from .coalgebra import Algebra, Coalgebra
from .canon import decode, encode
from .certificate import FAIL, PASS, UNKNOWN, Certificate, content_hash
from .errors import HashMismatch, InitalgError, InstanceError
from .functor import apply_obj
from .instances import loads, read_bytes


class Reject(Exception):
    """A witness does not satisfy its equation."""

    def __init__(self, equation, at=None):
        super().__init__(equation)
        self.equation = equation
        self.at = at


def _need(cond, equation, at=None):
    if not cond:
        raise Reject(equation, at)


def _graph(rows):
    return {decode(x): decode(y) for x, y in rows}


# -- per-command checks --------------------------------------------------------------

def _fixpoint(cert, f):
    P = f.poset
    trace = [decode(x) for x in cert.trace]
    _need(trace and trace[0] == po.bottom(P), "trace[0] = bottom", encode(trace[0]) if trace else None)
    for i in range(len(trace) - 1):
        _need(f(trace[i]) == trace[i + 1], "trace[i+1] = f(trace[i])", i)
    mu = trace[-1]
    _need(f(mu) == mu, "f(mu) = mu", encode(mu))
    w = cert.witnesses
    _need(decode(w["value"]) == mu, "value = last trace entry")
    values = {n: decode(e["value"]) for n, e in w["engines"].items()}
    if cert.outcome == PASS:
        for n, v in sorted(values.items()):
            _need(v == mu, "engine value = mu", n)
    elif cert.outcome == FAIL:
        _need(any(v != mu for v in values.values()), "some engine disagrees with mu")
    else:
        _need(not values and w["skipped"], "Unknown only when every engine was skipped")
    return len(trace)


def _check_cta(h, c, a, label):
    F = c.functor
    for x in c.carrier:
        _need(x in h, f"{label} is total", encode(x))
    for x in c.carrier:
        _need(h[x] == a(F.act(h.__getitem__, c(x))), f"{label}(x) = a(F {label}(c x))", encode(x))


def _check_cycle(c, cyc):
    _need(cyc, "cycle is nonempty")
    for i, x in enumerate(cyc):
        nxt = cyc[(i + 1) % len(cyc)]
        _need(x in c.carrier, "cycle lies in the carrier", encode(x))
        _need(nxt in set(c.functor.support(c(x))), "cycle edge x -> next in support(c x)", encode(x))


def _check_order(carrier, order, support_of):
    _need(set(order) == set(carrier) and len(order) == len(carrier),
          "order is a permutation of the carrier")
    seen = set()
    for x in order:
        for y in support_of(x):
            _need(y in seen, "children precede parents in the order", encode(x))
        seen.add(x)


def _hylo(cert, c, a):
    w = cert.witnesses
    if cert.outcome == PASS:
        order = [decode(x) for x in w["order"]]
        _check_order(c.carrier, order, lambda x: c.functor.support(c(x)))
        _check_cta(_graph(w["h"]), c, a, "h")
        return len(order)
    _check_cycle(c, [decode(x) for x in w["cycle"]])
    if cert.outcome == FAIL:
        maps = [_graph(m) for m in w["maps"]]
        _need(len(maps) >= 2 and maps[0] != maps[1], "two distinct maps")
        for k, h in enumerate(maps[:2]):
            _check_cta(h, c, a, f"h{k}")
    return 1


def _chain(cert, F):
    w = cert.witnesses
    s = ia.initial_chain(F, w["budget"])
    _need(s.sizes() == w["sizes"], "|W_j| as recorded", s.sizes())
    if cert.outcome == PASS:
        _need(s.converged and s.stage == w["stage"], "converges at the recorded stage")
        W, w_l = s.objects[s.stage], s.connectors[s.stage]
        inv = _graph(w["inverse"])
        _need({decode(x) for x in w["carrier"]} == W.as_set(), "carrier = W_l")
        for t in w_l.cod:
            _need(w_l(inv[t]) == t, "w . inverse = id", encode(t))
        for x in W:
            _need(inv[w_l(x)] == x, "inverse . w = id", encode(x))
    else:
        _need(not s.converged, "no stage within budget is an isomorphism")
    return len(s.objects)


def _iterate(p, S):
    """``{m(t) : t in F S}``, the subobject endomap at ``S``."""
    return frozenset(p.m(t) for t in apply_obj(p.functor, fs.FinSetObj(S)))


def _check_iterates(p, rows, final):
    its = [decode(r) for r in rows]
    _need(its and its[0] == frozenset(), "iterates start at the empty subset")
    for k in range(len(its) - 1):
        _need(_iterate(p, its[k]) == its[k + 1], "S_{k+1} = f(S_k)", k)
    if final is not None:
        _need(its[-1] == final, "last iterate = carrier")
        _need(_iterate(p, final) == final, "f(I) = I")
    return its


def _sub_iota(p, carrier, iota_rows):
    """Check a claimed ``iota: I -> F I`` against ``m`` and return it."""
    I = fs.FinSetObj(carrier)
    FI = apply_obj(p.functor, I)
    iota = _graph(iota_rows)
    _need(set(iota) == I.as_set(), "iota is defined on I")
    _need(set(iota.values()) == FI.as_set() and len(FI) == len(I), "iota is a bijection onto F I")
    for x in I:
        _need(p.m(iota[x]) == x, "m(iota x) = x", encode(x))
    return I, iota


def _initial_algebra(cert, p):
    w = cert.witnesses
    I, iota = _sub_iota(p, [decode(x) for x in w["carrier"]], w["iota"])
    _check_order(I, [decode(x) for x in w["order"]], lambda x: p.functor.support(iota[x]))
    _check_iterates(p, w["iterates"], I.as_set())
    return len(I)


def _cross_validate(cert, p):
    w = cert.witnesses
    if cert.outcome != PASS:
        s = ia.initial_chain(p.functor, w["budget"])
        _need(not s.converged, "chain does not converge within budget")
        return 1
    F = p.functor
    s = ia.initial_chain(F, w["stage"] + 1)
    _need(s.converged and s.stage == w["stage"], "chain converges at the recorded stage")
    chain_c = Coalgebra(F, s.objects[s.stage], s.connectors[s.stage])
    chain_a = Algebra(F, s.objects[s.stage], s.inverse)
    _need({decode(x) for x in w["chain_carrier"]} == chain_c.carrier.as_set(), "chain carrier")
    Isub = frozenset(decode(x) for x in w["subobject_carrier"])
    its = _check_iterates(p, w["iterates"], None)
    _need(its[-1] == Isub and _iterate(p, Isub) == Isub, "subobject carrier = last iterate, fixed")
    iota = ia._iota(p, fs.FinSetObj(Isub))
    ok, inv = fs.is_iso(iota)
    _need(ok, "iota is a bijection")
    sub_c, sub_a = Coalgebra(F, iota.dom, iota), Algebra(F, iota.dom, inv)
    phi, psi = _graph(w["phi"]), _graph(w["psi"])
    _check_cta(phi, chain_c, sub_a, "phi")
    _check_cta(psi, sub_c, chain_a, "psi")
    for x in chain_c.carrier:
        _need(psi[phi[x]] == x, "psi . phi = id", encode(x))
    for x in sub_c.carrier:
        _need(phi[psi[x]] == x, "phi . psi = id", encode(x))
    # stage identity: the image of the canonical cocone leg a_j is the j-th iterate
    alphas = ia.canonical_cocone(F, p.algebra(), len(its) - 1)
    for j, a in enumerate(alphas):
        _need(a.image() == its[j], "image(a_j) = f^j(0)", j)
    return len(phi) + len(psi)


def _embedding_legit(leg, proj, label):
    for x in leg.dom:
        _need(proj[leg(x)] == x, f"proj_{label} . c_{label} = id", encode(x))
    for y in leg.cod:
        _need(leg.cod.leq(leg(proj[y]), y), f"c_{label} . proj_{label} <= id", encode(y))
    po.PosetMap(leg.cod, leg.dom, proj)


def _verify_colimit(cert, value):
    D, C, legs = value
    dc.check_cocone(D, C, legs)
    w = cert.witnesses
    k = D.top()
    Dk, ck = D.objects[k], legs[k]
    s1, s2 = w["side1"], w["side2"]
    if cert.outcome == PASS:
        inv = _graph(s1["inverse"])
        po.PosetMap(C, Dk, inv)
        for d in Dk:
            _need(inv[ck(d)] == d, "inverse . c_k = id", encode(d))
        for z in C:
            _need(ck(inv[z]) == z, "c_k . inverse = id", encode(z))
        idem = []
        for i in D.index:
            proj = _graph(s2["projections"][str(i)])
            _embedding_legit(legs[i], proj, str(i))
            idem.append(po.PosetMap(C, C, {z: legs[i](proj[z]) for z in C}))
        j = dc.pointwise_join(C, idem)
        _need(j is not None and dc.is_identity(j), "join of c_i . proj_i = id_C")
        return len(D.index)
    if s1["kind"] == "no_factorization":
        d1, d2 = (decode(x) for x in s1["conflict"])
        _need(C.leq(ck(d1), ck(d2)) and not Dk.leq(d1, d2),
              "c_k(d1) <= c_k(d2) while d1 </= d2", [encode(d1), encode(d2)])
    else:
        y = decode(s1["outside"])
        _need(y in C and all(ck(d) != y for d in Dk), "outside element not in image(c_k)")
        leg = _graph(s1["leg"])
        po.PosetMap(Dk, dc.CHAIN2, leg)
        f1, f2 = (_graph(m) for m in s1["maps"])
        _need(f1 != f2, "the two factorizations differ")
        for f in (f1, f2):
            po.PosetMap(C, dc.CHAIN2, f)
            for d in Dk:
                _need(f[ck(d)] == leg[d], "f . c_k = leg", encode(d))
    ok2, _ = dc.embedding_side(D, C, legs)
    _need(not ok2, "embedding side fails as well")
    return 1


def _check_smooth_subsets(cert, A, family):
    w = cert.witnesses
    fam = [frozenset(S) for S in family]
    union = frozenset().union(*fam)
    _need(decode(w["join"]) == union, "join = union of the family")
    m = _graph(w["factorizer"])
    colim = {decode(x) for x in w["colimit"]}
    _need(set(m) == colim, "factorizer is defined on the colimit")
    injective = len(set(m.values())) == len(m)
    for z, i, x in w["representatives"]:
        z, i, x = decode(z), decode(i), decode(x)
        _need(i in fam and x in i and m[z] == x, "representative (i, x) of z lies in i, m(z) = x",
              encode(z))
    if cert.outcome == PASS:
        _need(injective, "factorizer is injective")
        _need(set(m.values()) == union, "image(factorizer) = union")
    else:
        _need(not injective or set(m.values()) != union, "claimed failure is visible")
    return len(m)


def _check_smooth_embeddings(cert, A, keys):
    w = cert.witnesses
    idx = {x: n for n, x in enumerate(A.elems)}

    def le(p, q):
        return all(q[idx[y]] == y for y in p)

    top = tuple(decode(x) for x in w["join"])
    _need(top in keys, "join is a member")
    for k in keys:
        _need(le(k, top), "every member lies below the join", [encode(x) for x in k])
    if cert.outcome != PASS:
        return 1
    B = A.subposet(set(top))
    _need({decode(x) for x in w["colimit"]} == set(B.elems), "colimit = image of the join")
    m = po.PosetMap(B, A, {x: x for x in B})
    proj = _graph(w["projection"])
    _embedding_legit(m, proj, "m")
    for y in A:
        j = po.join(B, [k[idx[y]] for k in keys])
        _need(j == proj[y], "proj(y) = join of c_i . proj_i (y)", encode(y))
    return len(A)


def _metric_join(cert, amb, members):
    w = cert.witnesses
    by = {m.name: m for m in members}
    carrier = [decode(x) for x in w["carrier"]]
    _need(set(carrier) == {v for m in members for v in m.m.values()}, "carrier = union of images")
    dist = {}
    for x, y, q, name, x1, y1 in w["distances"]:
        x, y, x1, y1, q = decode(x), decode(y), decode(x1), decode(y1), Fraction(q)
        mem = by[name]
        _need(mem.m[x1] == x and mem.m[y1] == y, "realizer maps onto the pair", [encode(x), encode(y)])
        _need(mem.space.d(x1, y1) == q, "realizer distance = d'", [encode(x), encode(y)])
        dist[frozenset((x, y))] = q
    for x, y in itertools.combinations(carrier, 2):
        _need(frozenset((x, y)) in dist, "d' is defined on every pair", [encode(x), encode(y)])
    for mem in members:
        for a, b in itertools.combinations(mem.space.points, 2):
            x, y = mem.m[a], mem.m[b]
            _need(dist[frozenset((x, y))] <= mem.space.d(a, b), "d' is a minimum",
                  [mem.name, encode(a), encode(b)])
    space = mt.FiniteMetric(tuple(carrier), dist)
    try:
        space.check()
    except InitalgError as e:
        raise Reject(f"metric axioms: {e}") from None
    top = w["maximum"]
    if top is not None:
        t = by[top]
        for mem in members:
            _need(mt._factor(mem, t) is not None, "each member factors through the maximum", mem.name)
        agree = all(space.d(t.m[a], t.m[b]) == t.space.d(a, b)
                    for a, b in itertools.combinations(t.space.points, 2))
        _need(agree == w["matches_maximum"], "matches_maximum as recorded")
        _need((cert.outcome == PASS) == agree, "outcome follows matches_maximum")
    return len(dist)


CHECKS = {
    "fixpoint": (("poset_map",), lambda c, v: _fixpoint(c, po.MonotoneEndo(v[0].dom, v[0].map))),
    "hylo": (("coalgebra", "algebra"), lambda c, v: _hylo(c, *v)),
    "chain": (("functor",), lambda c, v: _chain(c, v[0])),
    "initial-algebra": (("prefixed_point",), lambda c, v: _initial_algebra(c, v[0])),
    "cross-validate": (("prefixed_point",), lambda c, v: _cross_validate(c, v[0])),
    "verify-colimit": (("embedding_diagram",), lambda c, v: _verify_colimit(c, v[0])),
    "check-smooth": ((("subset_family", "embedding_family"),), None),
    "metric-join": (("metric_family",), lambda c, v: _metric_join(c, *v[0])),
}


def _exhausted(cert):
    ex = cert.witnesses["exhausted"]
    _need(cert.outcome == UNKNOWN, "a cap hit is Unknown", cert.outcome)
    _need(int(ex["size"]) > int(ex["cap"]), "size > cap", [ex["size"], ex["cap"]])
    return ["cap"]


def recheck(cert, files):
    """Re-verify ``cert`` against the instance files it names.

    ``files`` are paths in the order of ``cert.inputs``. A changed file raises
    :class:`HashMismatch`; a witness that fails its equation gives a Fail
    certificate naming the equation and where it failed.
    """
    if cert.command not in CHECKS:
        raise InstanceError("/command", f"cannot recheck {cert.command!r}")
    kinds, fn = CHECKS[cert.command]
    wanted = len(cert.inputs) if "exhausted" in cert.witnesses else len(kinds)
    if len(files) != len(cert.inputs) or len(files) != wanted:
        raise HashMismatch(f"{cert.command} needs {len(kinds)} input file(s), got {len(files)}")
    raws = []
    for path, rec in zip(files, cert.inputs):
        raw = read_bytes(path)
        if content_hash(raw) != rec["sha256"]:
            raise HashMismatch(f"{os.path.basename(path)} does not match the certificate's input hash")
        raws.append(raw)
    # a cap hit may have happened while parsing, so those certificates skip it
    values = [] if "exhausted" in cert.witnesses else [
        loads(raw, None if isinstance(kind, tuple) else kind) for raw, kind in zip(raws, kinds)]
    try:
        if "exhausted" in cert.witnesses:
            checked = _exhausted(cert)
        elif cert.command == "check-smooth":
            k, v = values[0]
            checked = (_check_smooth_subsets if k == "subset_family" else _check_smooth_embeddings)(cert, *v)
        else:
            checked = fn(cert, [v for _, v in values])
        bad = []
    except Reject as r:
        bad = [{"equation": r.equation, "at": r.at}]
    except (KeyError, TypeError, ValueError, InitalgError) as e:
        bad = [{"equation": "witness is well formed", "at": f"{type(e).__name__}: {e}"}]
    wit = {"command": cert.command, "outcome": cert.outcome}
    if not bad:
        wit["checked"] = checked
    return Certificate(command="recheck", outcome=FAIL if bad else PASS, witnesses=wit,
                       counterexamples=bad, inputs=list(cert.inputs))


def recheck_files(cert_path, files):
    try:
        with open(cert_path, encoding="utf-8") as fh:
            cert = Certificate.from_json(fh.read())
    except (OSError, ValueError, TypeError) as e:
        raise InstanceError("", f"unreadable certificate: {e}") from None
    return recheck(cert, files)

