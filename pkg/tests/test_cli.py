import json
import subprocess
import sys

import pytest

from treecycles.cli import main
from treecycles.generators import complete_graph, path_graph
from treecycles.graphs import load_graph, save_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture
def k4(tmp_path):
    p = tmp_path / "k4.json"
    save_graph(complete_graph(4), str(p))
    return str(p)


def test_cycles_oracle_k4(capsys, k4):
    code, rep = run(capsys, "cycles", "oracle", "--in", k4)
    assert code == 0
    assert rep["lengths"] == [3, 4]


def test_construct_staircase(capsys, tmp_path):
    out = tmp_path / "t.json"
    code, rep = run(capsys, "construct", "tree", "--seq", "staircase:2", "--n", "50", "--out", str(out))
    assert code == 0 and rep["pass"]
    t = load_graph(str(out))
    assert t.n == 50 and set(t.degrees()) <= {1, 3}
    assert str(out) in rep["artifacts"]


def test_verify_treelen_max_n(capsys):
    code, rep = run(capsys, "verify", "treelen", "--max-n", "14")
    assert code == 0 and rep["pass"]
    assert rep["records"]


def test_fault_injection_exits_one(capsys):
    code, rep = run(capsys, "verify", "treelen", "--max-n", "12", "--inject-fault", "drop-length")
    assert code == 1 and not rep["pass"]


def test_usage_errors(capsys, tmp_path):
    assert main(["bogus"]) == 2
    assert main(["cycles", "oracle", "--in", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["cycles", "oracle", "--in", str(bad)]) == 2
    assert main(["construct", "tree", "--seq", "nonsense:1", "--n", "10", "--out", str(tmp_path / "x.json")]) == 2
    capsys.readouterr()


def test_non_critical_input_fails(capsys, tmp_path):
    p = tmp_path / "p.json"
    save_graph(path_graph(5), str(p))
    code, rep = run(capsys, "critical", "check", "--in", str(p))
    assert code == 1 and not rep["pass"]


def test_critical_chain(capsys, tmp_path):
    t = tmp_path / "t.json"
    g = tmp_path / "g.json"
    certs = tmp_path / "certs.json"
    assert main(["construct", "tree", "--seq", "constant:1", "--n", "40", "--out", str(t)]) == 0
    assert main(["critical", "from-tree", "--in", str(t), "--out", str(g)]) == 0
    assert main(["critical", "check", "--in", str(g)]) == 0
    assert main(["critical", "order", "--in", str(g)]) == 0
    capsys.readouterr()
    code, rep = run(capsys, "cycles", "find", "--in", str(g), "--certs", str(certs))
    assert code == 0 and rep["lengths"]
    host = load_graph(str(g))
    data = json.loads(certs.read_text())
    for c in data if isinstance(data, list) else data["certificates"]:
        vs = c["vertices"]
        assert all(host.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def test_sumset_build(capsys):
    code, rep = run(capsys, "sumset", "build", "--k", "1")
    assert code == 0 and rep["pass"]


def test_json_flag_and_determinism(capsys, tmp_path):
    a = tmp_path / "a.json"
    runs = []
    for _ in range(2):
        assert main(["--seed", "3", "verify", "cycles", "--json", str(a)]) == 0
        runs.append(a.read_bytes())
    assert capsys.readouterr().out == ""
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["seed"] == 3


def test_dot_output(capsys, tmp_path):
    d = tmp_path / "t.dot"
    assert main(["construct", "tree", "--seq", "constant:1", "--n", "10", "--out", str(tmp_path / "t.json"), "--dot", str(d)]) == 0
    capsys.readouterr()
    assert d.read_text().startswith("graph")


def test_console_entry_point(k4):
    r = subprocess.run([sys.executable, "-m", "treecycles", "cycles", "oracle", "--in", k4], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["lengths"] == [3, 4]
    r = subprocess.run([sys.executable, "-m", "treecycles", "nope"], capture_output=True, text=True)
    assert r.returncode == 2 and "usage" in r.stderr
