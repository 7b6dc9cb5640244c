"""Command-line interface: read instance files, run a check, print a certificate.

Exit codes: 0 Pass, 1 Fail (a mathematical counterexample), 2 Unknown (a
budget or cap was hit), 3 input error. Certificates are canonical JSON, so two
runs on the same files and flags print identical bytes.
"""
import argparse
import os
import sys

from . import coalgebra as co
from . import dcpo as dc
from . import fixpoint as fp
from . import initial as ia
from . import metric as mt
from . import poset as po
from .canon import encode
from .caps import Caps
from .certificate import FAIL, PASS, UNKNOWN, Certificate, canonical_json, content_hash
from .errors import CapExceeded, InitalgError, InstanceError, NotACompleteLattice
from .finset import check_smooth_finset
from .instances import loads, read_bytes

EXIT = {PASS: 0, FAIL: 1, UNKNOWN: 2}
ENGINES = ("kleene", "zermelo", "tarski", "pataraia", "monoid")


def _input(path, kind, inputs):
    """Load one instance and record its hash in ``inputs``. ``kind`` may be a tuple."""
    raw = read_bytes(path)
    inputs.append({"path": os.path.basename(path), "sha256": content_hash(raw)})
    k, value = loads(raw, None if isinstance(kind, tuple) else kind)
    if isinstance(kind, tuple) and k not in kind:
        raise InstanceError("/kind", f"expected one of {', '.join(kind)}, got {k!r}")
    return k, value


# -- commands ------------------------------------------------------------------------

def run_fixpoint(f, engine="all"):
    """Run one engine or all of them on a monotone endomap and compare."""
    names = ENGINES if engine == "all" else (engine,)
    results, skipped = {}, {}
    trace = []
    for name in names:
        try:
            if name == "kleene":
                r = fp.kleene_lfp(f)
                trace = list(r.trace)
                results[name] = (r.value, r.stages)
            elif name == "zermelo":
                r = fp.zermelo_lfp(f)
                results[name] = (r.value, r.stages)
            elif name == "tarski":
                results[name] = (fp.tarski_lfp(f), None)
            elif name == "pataraia":
                r = fp.pataraia_lfp(f)
                results[name] = (r.value, r.stages)
            else:
                r = fp.pataraia_via_monoid(f)
                results[name] = (r.value, r.stages)
        except (CapExceeded, NotACompleteLattice) as e:
            if engine != "all" and isinstance(e, NotACompleteLattice):
                raise
            skipped[name] = f"{type(e).__name__}: {e}"
    if not trace:
        trace = list(fp.kleene_lfp(f).trace)
    values = {v for v, _ in results.values()}
    value = trace[-1]
    agree = values == {value}
    if not results:
        outcome = UNKNOWN
    else:
        outcome = PASS if agree else FAIL
    return Certificate(
        command="fixpoint",
        outcome=outcome,
        witnesses={
            "value": encode(value),
            "engines": {n: {"value": encode(v), "stages": s} for n, (v, s) in results.items()},
            "skipped": skipped,
            "flags": {"engine": engine},
        },
        trace=[encode(x) for x in trace],
        counterexamples=[] if agree else [{"engines": {n: encode(v) for n, (v, _) in results.items()}}],
        notes=["least: the trace is the Kleene chain from bottom, below every fixed point"],
    )


def run_check_smooth(kind, value):
    if kind == "subset_family":
        A, family = value
        return check_smooth_finset(A, family)
    A, family = value
    return dc.check_smooth_embeddings(A, family)


def _dispatch(args, inputs):
    """Run the command; loaded files are recorded in ``inputs`` as they are read."""
    cmd = args.command

    def get(path, kind):
        return _input(path, kind, inputs)[1]

    if cmd == "fixpoint":
        f = get(args.instance, "poset_map")
        if f.cod != f.dom:
            raise InstanceError("/cod", "fixpoint needs a self-map (omit cod)")
        return run_fixpoint(po.MonotoneEndo(f.dom, f.map), args.engine)
    if cmd == "hylo":
        c = get(args.coalgebra, "coalgebra")
        return co.hylo_certificate(c, get(args.algebra, "algebra"))
    if cmd == "chain":
        return ia.chain_certificate(get(args.functor, "functor"), args.budget)
    if cmd == "initial-algebra":
        return ia.initial_algebra_certificate(get(args.prefixed_point, "prefixed_point"), args.engine)
    if cmd == "cross-validate":
        p = get(args.prefixed_point, "prefixed_point")
        return ia.cross_validate(p.functor, p, args.budget, args.engine)
    if cmd == "verify-colimit":
        return dc.verify_basic_lemma(*get(args.diagram, "embedding_diagram"))
    if cmd == "check-smooth":
        kind, value = _input(args.family, ("subset_family", "embedding_family"), inputs)
        return run_check_smooth(kind, value)
    if cmd == "metric-join":
        return mt.metric_join_certificate(*get(args.family, "metric_family"))
    raise AssertionError(cmd)


def human(cert):
    lines = [f"{cert.command}: {cert.outcome}"]
    for k in sorted(cert.witnesses):
        v = canonical_json(cert.witnesses[k]).strip()
        if len(v) > 100:
            v = v[:97] + "..."
        lines.append(f"  {k}: {v}")
    for c in cert.counterexamples:
        lines.append(f"  counterexample: {canonical_json(c).strip()[:200]}")
    for n in cert.notes:
        lines.append(f"  note: {n}")
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="initalg", description=__doc__.splitlines()[0])
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json", default="json",
                     help="print the certificate as canonical JSON (default)")
    out.add_argument("--human", dest="fmt", action="store_const", const="human",
                     help="print a short readable summary")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("fixpoint", help="least fixed point of a monotone self-map")
    s.add_argument("instance", help="poset_map file (cod defaults to dom)")
    s.add_argument("--engine", choices=ENGINES + ("all",), default="all")

    s = sub.add_parser("hylo", help="coalgebra-to-algebra map (hylomorphism)")
    s.add_argument("coalgebra")
    s.add_argument("algebra")

    s = sub.add_parser("chain", help="run the initial-algebra chain")
    s.add_argument("functor")
    s.add_argument("--budget", type=int, default=5)

    s = sub.add_parser("initial-algebra", help="initial algebra inside a pre-fixed point")
    s.add_argument("prefixed_point")
    s.add_argument("--engine", choices=("pataraia", "zermelo"), default="pataraia")

    s = sub.add_parser("cross-validate", help="compare chain and subobject constructions")
    s.add_argument("prefixed_point")
    s.add_argument("--budget", type=int, default=6)
    s.add_argument("--engine", choices=("pataraia", "zermelo"), default="pataraia")

    s = sub.add_parser("verify-colimit", help="both sides of the embedding colimit criterion")
    s.add_argument("diagram", help="embedding_diagram file")

    s = sub.add_parser("check-smooth", help="smoothness for a directed family of subobjects")
    s.add_argument("family", help="subset_family or embedding_family file")

    s = sub.add_parser("metric-join", help="join of a directed family of metric subspaces")
    s.add_argument("family", help="metric_family file")

    s = sub.add_parser("recheck", help="re-verify a certificate's witnesses")
    s.add_argument("certificate")
    s.add_argument("files", nargs="*", help="the input files, in the certificate's order")
    return p


def exhausted(command, e, inputs):
    """The Unknown certificate for a command stopped by a size cap."""
    return Certificate(command=command, outcome=UNKNOWN, inputs=inputs,
                       witnesses={"exhausted": {"what": e.what, "size": e.size, "cap": e.cap}},
                       notes=[f"Exhausted: {e}"])


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors, which would read as Unknown
        return 3 if e.code else 0
    if args.command == "recheck":
        from .recheck import recheck_files
        try:
            cert = recheck_files(args.certificate, args.files)
        except (InitalgError, OSError) as e:
            return _fail_input(e, stdout, args.fmt)
    else:
        inputs = []
        try:
            cert = _dispatch(args, inputs)
        except CapExceeded as e:
            cert = exhausted(args.command, e, inputs)
        except (InitalgError, OSError) as e:
            return _fail_input(e, stdout, args.fmt)
        cert.inputs = inputs
        cert.caps = {**Caps.from_env().as_dict(), **cert.caps}
    stdout.write(cert.to_json() if args.fmt == "json" else human(cert))
    return EXIT[cert.outcome]


def _fail_input(e, stdout, fmt):
    if isinstance(e, OSError):
        e = InstanceError("", f"cannot read {e.filename}: {e.strerror}")
    err = {"error": type(e).__name__, "message": str(e)}
    if isinstance(e, InstanceError):
        err["pointer"] = e.pointer
    stdout.write(canonical_json(err) if fmt == "json" else f"input error: {e}\n")
    return 3


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
