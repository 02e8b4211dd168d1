import io
import json
import re

import pytest

from qca.cli import EXIT_BOUND, EXIT_FAIL, EXIT_OK, EXIT_USAGE, run


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_verify_straightening_rank_five():
    code, out, _ = _run("verify", "--n", "5", "--suite", "straightening")
    assert code == EXIT_OK
    assert "FAIL" not in out
    assert re.search(r"^(\d+)/\1 passed$", out, re.M)


def test_delta_classical_text():
    code, out, _ = _run("delta", "--n", "3", "--i", "1", "--j", "3", "--classical")
    assert code == EXIT_OK
    assert out.strip() == "Y1*Y2*Y3 - Y1*Z1 - Y3*Z3 + Z2"


def test_exchange_graph_dot():
    code, out, _ = _run("exchange-graph", "--n", "3", "--format", "dot")
    assert code == EXIT_OK
    assert out.startswith("digraph")
    nodes = re.findall(r"^\s*c\d+ \[label=", out, re.M)
    edges = re.findall(r"^\s*c\d+ -> c\d+", out, re.M)
    assert len(nodes) == 14 and len(edges) == 21


def test_delta_quantum_json():
    code, out, _ = _run("delta", "--n", "3", "--i", "1", "--j", "2", "--quantum", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["basis"] == "dualPBW"


def test_shuffle_expand_longest_interval():
    from qca.roota import Context
    ctx = Context(7)
    k = ctx.intervals.index((1, 7)) + 1
    code, out, _ = _run("shuffle-expand", "--n", "7", "--k", str(k), "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 272


def test_straighten_text():
    code, out, _ = _run("straighten", "--n", "3", "--word", "z1,y1")
    assert code == EXIT_OK
    assert out.strip() == "(1 - v^-2)*E[z2]* + (v^-1)*E[y1*z1]*"


def test_dcb_degree():
    code, out, _ = _run("dcb", "--n", "3", "--degree", "1,1,0")
    assert code == EXIT_OK
    assert out.splitlines() == ["B[0, 0, 0, 0, 1, 0]* = E[z3]*",
                                "B[1, 0, 0, 0, 0, 1]* = (-v^-1)*E[z3]* + E[y1*y2]*"]
    code, out, _ = _run("dcb", "--n", "5", "--degree", "1,1,0,0,0")
    assert code == EXIT_OK and out.strip() == "no PBW monomials in this degree"


def test_mutate_and_seed_dot():
    code, out, _ = _run("mutate", "--n", "3", "--at", "1")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "D1,1 = Z1^-1*Z2 + Z1^-1*P1"
    code, out, _ = _run("mutate", "--n", "3", "--at", "1", "--format", "dot")
    assert code == EXIT_OK and out.startswith("digraph seed_n3 {")


def test_check_compatible_exit_codes():
    code, out, _ = _run("check-compatible", "--n", "5")
    assert code == EXIT_OK and "diagonal [2, 2, 2, 2, 2]" in out
    code, out, _ = _run("check-compatible", "--n", "5", "--listed")
    assert code == EXIT_FAIL and "not compatible" in out


@pytest.mark.parametrize("argv", [
    ("frobnicate",),
    (),
    ("delta", "--n", "4", "--i", "1", "--j", "2"),
    ("delta", "--n", "3", "--i", "2", "--j", "1"),
    ("delta", "--n", "3", "--variant", "nope", "--i", "1", "--j", "1"),
    ("mutate", "--n", "3", "--at", "4"),
    ("straighten", "--n", "3", "--word", "q7"),
    ("dcb", "--n", "3", "--degree", "1,1"),
    ("shuffle-expand", "--n", "3"),
])
def test_usage_errors(argv):
    code, _, err = _run(*argv)
    assert code == EXIT_USAGE
    assert err.startswith("qca: error:")


@pytest.mark.parametrize("argv", [
    ("exchange-graph", "--n", "5"),
    ("verify", "--n", "9", "--suite", "straightening"),
    ("dcb", "--n", "5", "--degree", "3,3,3,0,0"),
])
def test_bound_exceeded(argv):
    code, _, err = _run(*argv)
    assert code == EXIT_BOUND
    assert err.startswith("qca: bound exceeded:")


def test_byte_identical_output():
    argv = ("verify", "--n", "3", "--suite", "all", "--format", "json")
    first = _run(*argv)
    assert first[0] == EXIT_OK
    assert _run(*argv) == first


def test_cache_is_observationally_equivalent(tmp_path, monkeypatch):
    argv = ("dcb", "--n", "5", "--degree", "1,1,1,1,0")
    plain = _run(*argv)
    monkeypatch.setenv("QCA_CACHE_DIR", str(tmp_path / "cache"))
    miss = _run(*argv)
    files = list((tmp_path / "cache").iterdir())
    assert files
    hit = _run(*argv)
    assert plain == miss == hit


def test_cache_dir_flag(tmp_path):
    argv = ("dcb", "--n", "5", "--degree", "1,1,1,0,0", "--cache-dir", str(tmp_path))
    assert _run(*argv)[0] == EXIT_OK
    assert any(p.name.endswith(".json") for p in tmp_path.iterdir())


def test_qprime_verify():
    code, out, _ = _run("verify", "--n", "4", "--variant", "qprime")
    assert code == EXIT_OK and "FAIL" not in out
