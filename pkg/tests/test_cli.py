import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "otisham.cli"]


def run(*args, check=True):
    proc = subprocess.run(
        CLI + list(args), capture_output=True, text=True, timeout=300
    )
    if check and proc.returncode != 0:
        raise AssertionError(f"{args}: rc={proc.returncode}\n{proc.stderr}")
    return proc


def test_gen_bowtie_edge_list():
    out = run("gen", "bowtie", "--m", "3", "--n", "4").stdout
    lines = out.strip().splitlines()
    assert lines[0] == "V 6"
    assert len(lines) == 1 + 7  # m + n edges


def test_gen_usage_errors():
    assert run("gen", "butterfly", check=False).returncode == 4
    assert run("gen", "bowtie", "--m", "2", "--n", "4", check=False).returncode == 4
    assert run("nonsense", check=False).returncode == 4


def test_otis_pipeline(tmp_path):
    base = tmp_path / "base.el"
    base.write_text(run("gen", "cycle", "--k", "3").stdout)
    out = run("otis", "--in", str(base)).stdout
    assert out.splitlines()[0] == "V 9"


def test_decide_json_verdict(tmp_path):
    el = tmp_path / "c5.el"
    el.write_text(run("gen", "cycle", "--k", "5").stdout)
    proc = run("decide", "--in", str(el), "--json")
    payload = json.loads(proc.stdout)
    assert payload["verdict"] == "hamiltonian"
    assert payload["witness"] == ["1", "2", "3", "4", "5"]


def test_decide_budget_inconclusive_exit_code(tmp_path):
    el = tmp_path / "k6.el"
    el.write_text(run("gen", "complete", "--k", "6").stdout)
    proc = run("decide", "--in", str(el), "--budget-nodes", "1", "--json", check=False)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["verdict"] == "inconclusive"


def test_decide_with_seed_file(tmp_path):
    el = tmp_path / "c4.el"
    el.write_text(run("gen", "cycle", "--k", "4").stdout)
    seed = tmp_path / "seed.json"
    seed.write_text(json.dumps({"deleted": [["1", "2"]]}))
    proc = run("decide", "--in", str(el), "--seed", str(seed), "--json")
    assert json.loads(proc.stdout)["verdict"] == "non-hamiltonian"


def test_refute_count_certificate(tmp_path):
    base = tmp_path / "b44.el"
    base.write_text(run("gen", "bowtie", "--m", "4", "--n", "4").stdout)
    g = tmp_path / "o44.el"
    g.write_text(run("otis", "--in", str(base)).stdout)
    payload = json.loads(run("refute-count", "--in", str(g), "--json").stdout)
    assert payload["edge_budget"] == 28
    assert payload["total_bound"] == 29
    inconclusive = tmp_path / "c6.el"
    inconclusive.write_text(run("gen", "cycle", "--k", "6").stdout)
    proc = run("refute-count", "--in", str(inconclusive), "--json", check=False)
    assert proc.returncode == 2
    assert json.loads(proc.stdout)["inconclusive"] is True


def test_ham_build_and_verify_and_ist(tmp_path):
    payload = json.loads(run("ham-build", "--m", "3", "--n", "5", "--json").stdout)
    assert payload["verified"] is True
    assert len(payload["cycle"]) == 49

    base = tmp_path / "b35.el"
    base.write_text(run("gen", "bowtie", "--m", "3", "--n", "5").stdout)
    graph_file = tmp_path / "o35.el"
    graph_file.write_text(run("otis", "--in", str(base)).stdout)
    cert = tmp_path / "cycle.json"
    cert.write_text(
        json.dumps(
            {"graph_hash": payload["graph_hash"], "order": payload["cycle"], "verified": True}
        )
    )
    verify = json.loads(run("verify", "--in", str(graph_file), "--cycle", str(cert), "--json").stdout)
    assert verify["hash_match"] and verify["valid_cycle"]

    ist = json.loads(
        run("ist", "--cycle", str(cert), "--root", "3:3", "--in", str(graph_file), "--json").stdout
    )
    assert ist["independent"] is True and ist["edge_disjoint"] is True


def test_verify_detects_mismatch(tmp_path):
    el = tmp_path / "c4.el"
    el.write_text(run("gen", "cycle", "--k", "4").stdout)
    cert = tmp_path / "bad.json"
    cert.write_text(json.dumps({"graph_hash": "bogus", "order": ["1", "3", "2", "4"], "verified": True}))
    proc = run("verify", "--in", str(el), "--cycle", str(cert), "--json", check=False)
    assert proc.returncode == 3
    payload = json.loads(proc.stdout)
    assert not payload["hash_match"]
    assert payload["reason"].startswith("non-adjacent-step")


def test_ham_build_even_even_reports_unsupported():
    payload = json.loads(run("ham-build", "--m", "4", "--n", "6", "--json").stdout)
    assert payload["failure"] == "unsupported-class"


def test_emit_key_edges_has_provenance():
    payload = json.loads(
        run("ham-build", "--m", "7", "--n", "7", "--emit-key-edges", "--json").stdout
    )
    assert payload["class"] == "odd-odd-equal"
    assert all(entry["tag"] for entry in payload["key_edges"])


def test_export_dot(tmp_path):
    base = tmp_path / "b.el"
    base.write_text(run("gen", "bowtie", "--m", "3", "--n", "3").stdout)
    g = tmp_path / "o.el"
    g.write_text(run("otis", "--in", str(base)).stdout)
    dot = run("export", "--in", str(g)).stdout
    assert dot.startswith("graph")
    assert "subgraph" in dot


def test_reproduce_matches_published_counts():
    payload = json.loads(run("reproduce", "--json").stdout)
    assert payload["ok"] is True
    assert payload["vertices"] == 49 and payload["edges"] == 77
    assert payload["total_bound"] == 29


def test_reproduce_rejects_tampered_generator():
    from otisham.cli import reproduce_report
    from otisham.topology import gen_bowtie, otis
    from otisham.graph import Graph

    tampered = otis(gen_bowtie(4, 4))
    broken = Graph.from_edges(
        [e for e in tampered.edges()][:-1], vertices=tampered.vertices()
    )
    report, mismatches = reproduce_report(graph_44=broken)
    assert mismatches  # the command would exit 3


def test_sweep_small(tmp_path):
    payload = json.loads(run("sweep", "--max-base", "7", "--json").stdout)
    assert payload["failed"] == 0
    classes = {(e["m"], e["n"]): e for e in payload["entries"]}
    assert classes[(4, 4)]["status"] == "unsupported"
    assert classes[(3, 3)]["status"] == "ok"
    proc = run("sweep", "--max-base", "4", check=False)
    assert proc.returncode == 4


def test_json_output_is_byte_identical():
    a = run("ham-build", "--m", "5", "--n", "4", "--json").stdout
    b = run("ham-build", "--m", "5", "--n", "4", "--json").stdout
    assert a == b
    a = run("reproduce", "--json").stdout
    b = run("reproduce", "--json").stdout
    assert a == b
