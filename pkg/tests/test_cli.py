import io
import json
from pathlib import Path

import pytest

from dualkit.cli import run

DATA = Path(__file__).resolve().parent.parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    report = json.loads(out.getvalue()) if out.getvalue().startswith("{") else None
    return code, report, err.getvalue()


def test_context_stats_r0():
    code, report, _ = call("context", "stats", str(DATA / "r0.cxt"))
    assert code == 0 and report["passed"]
    assert report["result"]["c"] == 3 and report["result"]["boolean_size"] == 8
    assert report["schema"] == "dualkit.report/1" and len(report["input_digest"]) == 64


def test_context_subcommands():
    path = str(DATA / "r0.cxt")
    code, report, _ = call("context", "galois", path)
    assert code == 0 and report["result"]["size"] == 4
    code, report, _ = call("context", "dual", path)
    assert report["result"]["cxt"].startswith("B\n\n3\n2\n")
    code, report, _ = call("context", "verify-duality", path)
    assert code == 0 and report["result"]["c"] == 3


def test_json_context_input(tmp_path):
    p = tmp_path / "r0.json"
    p.write_text('{"m": 2, "n": 3, "rows": ["110", "011"]}')
    code, report, _ = call("setfam", "lattice", str(p), "--json")
    assert code == 0 and report["result"]["size"] == 5
    code, report, _ = call("setfam", "count", str(p))
    assert code == 0 and report["result"]["predicted"] == 8


def test_poset_subcommands():
    chain = str(DATA / "chain2.json")
    assert call("poset", "check-pps", chain)[0] == 0
    for cmd in ("segments", "ideals", "tailalg", "taillat", "closure", "check-ideals", "free-boolean", "birkhoff"):
        code, report, _ = call("poset", cmd, chain)
        assert code == 0, cmd
    code, report, _ = call("poset", "universal", chain, "--ground", "2")
    assert code == 0 and report["result"]["maps"] == 9
    code, report, _ = call("poset", "universal", chain, "--ground", "2", "--map", "[[0], [0, 1]]")
    assert code == 0 and report["result"]["unique_extension"]


def test_birkhoff_failure_exit_code():
    code, report, _ = call("poset", "birkhoff", str(DATA / "m3.json"))
    assert code == 1 and report["result"]["error"] == "NotDistributive"


def test_alg_subcommands():
    code, report, _ = call("alg", "projective", "--preset", "boolean2", "--n", "3")
    assert code == 0 and report["result"]["holds"]
    code, report, _ = call("alg", "projectively-trivial", str(DATA / "meet2.json"), "--n", "1")
    assert code == 1 and report["result"]["witnesses"]
    code, report, _ = call("alg", "pol", "--relations", str(DATA / "leq2.json"), "--arity", "2")
    assert report["result"]["count"] == 9
    code, report, _ = call("alg", "preserves", "--preset", "lattice2", "--relations", str(DATA / "leq2.json"))
    assert code == 0
    code, report, _ = call("alg", "preserves", "--preset", "boolean2", "--relations", str(DATA / "leq2.json"))
    assert code == 1
    code, report, _ = call("alg", "verify-3a", str(DATA / "vm_boolean.json"))
    assert code == 0 and report["result"]["homs"] == 3
    for cmd in ("classify", "commutes", "subalg", "homs", "projection-property", "centralizer", "inv"):
        assert call("alg", cmd, "--preset", "lattice2")[0] == 0, cmd


def test_usage_errors():
    assert call("context", "stats", "missing.cxt")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("alg", "classify")[0] == 2
    code, _, err = call("poset", "check-pps", str(DATA / "r0.cxt"))
    assert code == 2 and "error" in err


def test_caps_from_env_and_flags(monkeypatch):
    path = str(DATA / "r0.cxt")
    monkeypatch.setenv("DUALKIT_CAPS", "members=3")
    assert call("setfam", "boolean", path)[0] == 2
    assert call("--cap-members", "100", "setfam", "boolean", path)[0] == 0
    monkeypatch.setenv("DUALKIT_CAPS", "bogus")
    assert call("setfam", "boolean", path)[0] == 2


def test_text_format():
    out = io.StringIO()
    assert run(["--format", "text", "context", "stats", str(DATA / "r0.cxt")], out=out) == 0
    assert out.getvalue().startswith("context stats: PASS")


def test_reports_are_deterministic():
    a = call("poset", "check-pps", str(DATA / "n4.json"))[1]
    b = call("poset", "check-pps", str(DATA / "n4.json"))[1]
    a.pop("wall_time"), b.pop("wall_time")
    assert a == b


@pytest.mark.slow
def test_meta_selftest_subset():
    code, report, _ = call("meta", "selftest", "--criteria", "4,5,6")
    assert code == 0 and [c["number"] for c in report["result"]["criteria"]] == [4, 5, 6]
