import io
import json
import pathlib
import shutil
import subprocess
import sys

import pytest

from initalg.cli import main

INST = pathlib.Path(__file__).resolve().parents[1] / "demos" / "instances"


def run(*argv):
    out = io.StringIO()
    code = main([str(a) for a in argv], stdout=out)
    return code, out.getvalue()


def f(name):
    return INST / f"{name}.json"


CASES = [
    (("fixpoint", f("fixpoint_chain3"), "--engine", "all"), 0),
    (("fixpoint", f("fixpoint_vee"), "--engine", "all"), 0),
    (("fixpoint", f("fixpoint_chain3"), "--engine", "tarski"), 0),
    (("hylo", f("coalgebra_count3"), f("algebra_parity")), 0),
    (("hylo", f("coalgebra_loop"), f("algebra_sticky")), 1),
    (("hylo", f("coalgebra_loop"), f("algebra_parity")), 2),
    (("chain", f("functor_one_plus_x"), "--budget", "5"), 2),
    (("chain", f("functor_const2")), 0),
    (("initial-algebra", f("prefixed_const2")), 0),
    (("initial-algebra", f("prefixed_const2"), "--engine", "zermelo"), 0),
    (("cross-validate", f("prefixed_const2"), "--budget", "6"), 0),
    (("verify-colimit", f("diagram_colimit")), 0),
    (("verify-colimit", f("diagram_not_colimit")), 1),
    (("check-smooth", f("subsets_chain")), 0),
    (("check-smooth", f("embeddings_diamond")), 0),
    (("metric-join", f("metric_chain")), 0),
]


@pytest.mark.parametrize("argv, code", CASES, ids=lambda x: x if isinstance(x, int) else " ".join(
    str(getattr(a, "stem", a)) for a in x))
def test_exit_codes(argv, code):
    got, out = run(*argv)
    assert got == code
    cert = json.loads(out)
    assert cert["outcome"] == {0: "Pass", 1: "Fail", 2: "Unknown"}[code]


def test_documented_examples():
    code, out = run("fixpoint", f("fixpoint_chain3"), "--engine", "all")
    cert = json.loads(out)
    assert code == 0 and {e["value"] for e in cert["witnesses"]["engines"].values()} == {2}
    code, out = run("chain", f("functor_one_plus_x"), "--budget", "5")
    cert = json.loads(out)
    assert code == 2 and cert["witnesses"]["sizes"] == [0, 1, 2, 3, 4, 5]


@pytest.mark.parametrize("argv", [a for a, _ in CASES], ids=lambda a: " ".join(str(getattr(x, "stem", x)) for x in a))
def test_determinism_and_recheck(argv, tmp_path):
    _, first = run(*argv)
    _, second = run(*argv)
    assert first == second
    cert = tmp_path / "cert.json"
    cert.write_text(first)
    files = [a for a in argv if isinstance(a, pathlib.Path)]
    code, out = run("recheck", cert, *files)
    assert code == 0, out
    assert json.loads(out)["outcome"] == "Pass"


def test_recheck_detects_tampering(tmp_path):
    _, out = run("hylo", f("coalgebra_count3"), f("algebra_parity"))
    cert = json.loads(out)
    h = cert["witnesses"]["h"]
    h[-1][1] = "odd" if h[-1][1] == "even" else "even"
    p = tmp_path / "cert.json"
    p.write_text(json.dumps(cert))
    code, out = run("recheck", p, f("coalgebra_count3"), f("algebra_parity"))
    res = json.loads(out)
    assert code == 1 and res["outcome"] == "Fail"
    assert res["counterexamples"][0]["equation"] == "h(x) = a(F h(c x))"


def test_recheck_rejects_stale_inputs(tmp_path):
    src = tmp_path / "alg.json"
    shutil.copy(f("algebra_parity"), src)
    _, out = run("hylo", f("coalgebra_count3"), src)
    cert = tmp_path / "cert.json"
    cert.write_text(out)
    src.write_text(src.read_text() + "\n")
    code, out = run("recheck", cert, f("coalgebra_count3"), src)
    assert code == 3 and json.loads(out)["error"] == "HashMismatch"


def test_input_errors_exit_3(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "finfn", "dom": [1], "cod": [2], "graph": [[1, 2], [1, 2]]}))
    code, out = run("fixpoint", bad)
    assert code == 3 and json.loads(out)["pointer"] in ("/kind", "")
    code, out = run("fixpoint", tmp_path / "missing.json")
    assert code == 3
    bad.write_text("{not json")
    code, out = run("chain", bad)
    assert code == 3 and json.loads(out)["pointer"] == ""
    bad.write_text(json.dumps({"kind": "functor", "tag": "sum", "left": {"tag": "id"}}))
    code, out = run("chain", bad)
    assert code == 3 and json.loads(out)["pointer"] == "" and "right" in json.loads(out)["message"]


def test_human_output():
    code, out = run("--human", "chain", f("functor_const2"))
    assert code == 0 and "Pass" in out and not out.lstrip().startswith("{")


def test_caps_from_environment(monkeypatch):
    monkeypatch.setenv("INITALG_ENUM_CAP", "7")
    _, out = run("chain", f("functor_const2"))
    assert json.loads(out)["caps"]["enum"] == 7


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "initalg", "chain", str(f("functor_one_plus_x"))],
                       capture_output=True, text=True)
    assert r.returncode == 2 and json.loads(r.stdout)["outcome"] == "Unknown"


def _cli(*argv, env=None):
    import os
    e = dict(os.environ, **(env or {}))
    return subprocess.run([sys.executable, "-m", "initalg", *map(str, argv)],
                          capture_output=True, text=True, env=e)


@pytest.mark.parametrize("cap, argv", [
    ("INITALG_ENUM_CAP", ("check-smooth", f("embeddings_diamond"))),
    ("INITALG_OBJ_CAP", ("chain", f("functor_const2"))),
    ("INITALG_OBJ_CAP", ("hylo", f("coalgebra_loop"), f("algebra_parity"))),
])
def test_cap_hits_are_unknown_and_recheckable(cap, argv, tmp_path):
    r = _cli(*argv, env={cap: "1"})
    assert r.returncode == 2
    cert = json.loads(r.stdout)
    assert cert["outcome"] == "Unknown" and cert["notes"][0].startswith("Exhausted")
    p = tmp_path / "cert.json"
    p.write_text(r.stdout)
    files = [a for a in argv[1:]][:len(cert["inputs"])]
    r = _cli("recheck", p, *files, env={cap: "1"})
    assert r.returncode == 0, r.stdout


def test_usage_errors_exit_3():
    assert _cli("no-such-command").returncode == 3
    assert _cli("chain").returncode == 3
    assert _cli("--help").returncode == 0
