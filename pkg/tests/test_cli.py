import csv
import io
import json
import subprocess
import sys
from importlib.resources import files

import numpy as np
import pydot
import pytest

from catbn import benchmarks
from catbn.averaging import read_strength_tsv
from catbn.cli import main
from catbn.dataset import load_csv, write_csv
from catbn.export import edges_from_tsv
from catbn.params_sim import fit_cpts

DATA = files("catbn") / "data"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture()
def tiered_csv(tmp_path, tiered_50k):
    p = tmp_path / "tiered.csv"
    with open(p, "w", newline="") as fh:
        write_csv(tiered_50k.with_rows(tiered_50k.rows[:5000]), fh)
    return p


@pytest.fixture()
def collider_csv(tmp_path, collider_50k):
    p = tmp_path / "collider.csv"
    with open(p, "w", newline="") as fh:
        write_csv(collider_50k.with_rows(collider_50k.rows[:20000]), fh)
    return p


def rows(text):
    return list(csv.DictReader(io.StringIO(text), delimiter="\t"))


def test_select(tiered_csv, capsys):
    code, out, _ = run(["select", "--input", tiered_csv, "--target", "Evc"], capsys)
    assert code == 0
    table = rows(out)
    assert len(table) == 7
    assert {r["variable"] for r in table if r["selected"] == "1"} == \
        {"CstDst", "EvcNtc", "Nbr", "FamFrds", "Rsk"}


def test_select_high_threshold_on_independent_data(tmp_path, capsys):
    rng = np.random.default_rng(0)
    p = tmp_path / "ind.csv"
    p.write_text("X,Y,T\n" + "\n".join(",".join(map(str, r)) for r in rng.integers(0, 2, (400, 3))))
    code, out, _ = run(["select", "--input", p, "--target", "T", "--selection-fraction", "0.99"], capsys)
    assert code == 0
    assert all(r["selected"] == "0" for r in rows(out))


@pytest.mark.parametrize("algo", ["pc_stable", "inter_iamb"])
def test_learn_collider(collider_csv, tmp_path, capsys, algo):
    dot_path = tmp_path / "g.dot"
    code, out, _ = run(["learn", "--input", collider_csv, "--target", "C", "--no-selection",
                        "--algorithm", algo, "--dot", dot_path], capsys)
    assert code == 0
    g = edges_from_tsv(out)
    assert g.directed == {("A", "C"), ("B", "C")}
    (graph,) = pydot.graph_from_dot_data(dot_path.read_text())
    arrows = {(e.get_source().strip('"'), e.get_destination().strip('"')) for e in graph.get_edges()
              if e.get("dir") != "none"}
    assert arrows == {("A", "C"), ("B", "C")}


def test_learn_empty_selection(tmp_path, capsys):
    rng = np.random.default_rng(2)
    p = tmp_path / "ind.csv"
    p.write_text("X,Y,T\n" + "\n".join(",".join(map(str, r)) for r in rng.integers(0, 2, (400, 3))))
    code, out, _ = run(["learn", "--input", p, "--target", "T", "--selection-fraction", "0.99"], capsys)
    assert code == 0
    g = edges_from_tsv(out)
    assert g.n_edges() == 0


def test_average_is_byte_identical(collider_csv, tmp_path, capsys):
    outs = []
    for i, workers in enumerate((1, 1, 2)):
        tsv = tmp_path / f"s{i}.tsv"
        code, _, _ = run(["average", "--input", collider_csv, "--target", "C", "--no-selection",
                          "--replicates", 6, "--seed", 9, "--workers", workers, "--tsv", tsv], capsys)
        assert code == 0
        outs.append(tsv.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    net = read_strength_tsv(io.StringIO(outs[0].decode()))
    assert {frozenset((e.source, e.target)) for e in net.edges if e.strength == 1.0} >= \
        {frozenset("AC"), frozenset("BC")}


def test_average_single_replicate(collider_csv, capsys):
    code, out, _ = run(["average", "--input", collider_csv, "--target", "C", "--no-selection",
                        "--replicates", 1], capsys)
    assert code == 0
    assert {float(r["strength"]) for r in rows(out)} <= {0.0, 1.0}


def test_average_renders_fixture(tmp_path, capsys):
    dot_path = tmp_path / "h.dot"
    code, out, _ = run(["average", "--strengths", DATA / "harvey_pc_stable.tsv", "--dot", dot_path],
                       capsys)
    assert code == 0
    (graph,) = pydot.graph_from_dot_data(dot_path.read_text())
    style = {}
    for e in graph.get_edges():
        a, b = e.get_source().strip('"'), e.get_destination().strip('"')
        if e.get("dir") == "none":
            style[frozenset((a, b))] = (e.get("style"), None)
        else:
            style[(a, b)] = (e.get("style"), "arrow")
    assert style[("Eld", "D_Eld")] == ("solid", "arrow")
    assert style[("EvcNtc", "Evc")] == ("dotted", "arrow")
    assert style[frozenset(("Nbr", "FamFrds"))] == ("solid", None)
    assert style[frozenset(("TV_Prp", "SM_PpLv"))] == ("solid", None)
    assert style[("FamFrds", "SM_PpLv")] == ("dotted", "arrow")
    assert len(style) == 12


def test_compare_tables(capsys):
    code, out, _ = run(["compare", DATA / "harvey_pc_stable.tsv", DATA / "irma_pc_stable.tsv"], capsys)
    assert code == 0
    shared_section = out.split("# shared\n")[1].split("# a_only")[0]
    shared = {frozenset(r[:2]) for r in csv.reader(io.StringIO(shared_section), delimiter="\t")}
    for a, b in [("FamFrds", "Evc"), ("Nbr", "Evc"), ("FamFrds", "Rsk"), ("CstDst", "EvcNtc")]:
        assert frozenset((a, b)) in shared


def sections(report):
    out = {}
    for block in report.split("# ")[1:]:
        if block.startswith("warning"):
            continue
        head, *body = block.strip("\n").split("\n")
        out[head] = body[1:]  # drop column header
    return out


def test_compare_identical_and_disjoint(tmp_path, capsys):
    p = DATA / "irma_inter_iamb.tsv"
    _, out, _ = run(["compare", p, p], capsys)
    s = sections(out)
    assert s["a_only"] == [] and s["b_only"] == [] and len(s["shared"]) == 18
    q = tmp_path / "other.tsv"
    q.write_text("from\tto\tstrength\tdirection\nX\tY\t0.9\t0.7\n")
    code, out, err = run(["compare", p, q], capsys)
    assert code == 0
    s = sections(out)
    assert s["shared"] == s["a_only"] == s["b_only"] == []
    assert "share no variables" in err


def test_simulate(tmp_path, capsys):
    code, out, _ = run(["simulate", "--benchmark", "chain", "-n", 10, "--seed", 3], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 11 and lines[0] == "A,B,C"
    _, again, _ = run(["simulate", "--benchmark", "chain", "-n", 10, "--seed", 3], capsys)
    assert again == out


def test_simulate_roundtrip(tmp_path, capsys):
    net = tmp_path / "chain.json"
    csv_path = tmp_path / "chain.csv"
    run(["simulate", "--benchmark", "chain", "-n", 1, "--write-network", net], capsys)
    code, _, _ = run(["simulate", net, "-n", 50000, "--seed", 1, "-o", csv_path], capsys)
    assert code == 0
    bn = benchmarks.chain()
    d = load_csv(csv_path, levels={v.name: v.levels for v in bn.variables})
    fitted = fit_cpts(d, bn.dag)
    for name, cpt in bn.cpts.items():
        assert np.abs(fitted.cpts[name].table - cpt.table).max() < 0.02


@pytest.mark.parametrize("argv,code,category", [
    (["select", "--target", "Evc"], 2, "ConfigError"),
    (["select", "--input", "missing.csv", "--target", "Evc"], 7, "OSError"),
    (["simulate", "-n", 5], 2, "ConfigError"),
])
def test_exit_codes(argv, code, category, capsys):
    got, _, err = run(argv, capsys)
    assert got == code
    assert err.startswith(f"error [{category}]")


def test_exit_code_bad_data_and_network(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("A,B\n1,2\n3\n")
    got, _, err = run(["select", "--input", bad, "--target", "A"], capsys)
    assert got == 3 and "line 3" in err
    net = tmp_path / "n.json"
    net.write_text(json.dumps({"nodes": [{"name": "A", "levels": ["x"], "cpt": [[1.0]]}]}))
    got, _, err = run(["simulate", net, "-n", 3], capsys)
    assert got == 5 and "nodes[0]" in err
    tsv = tmp_path / "bad.tsv"
    tsv.write_text("from\tto\n")
    got, _, _ = run(["compare", tsv, tsv], capsys)
    assert got == 6


def test_constraint_error_exit(tmp_path, collider_csv, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"input": str(collider_csv), "target": "C", "tiers": {"A": 1},
                               "selection_fraction": None}))
    got, _, err = run(["learn", "--config", cfg], capsys)
    assert got == 4 and "B" in err


def test_config_file_and_override(tmp_path, collider_csv, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"input": collider_csv.name, "target": "C", "tiers": {"A": 1, "B": 1},
                               "alpha": 0.01, "selection_fraction": None}))
    got, out, _ = run(["learn", "--config", cfg, "--algorithm", "inter_iamb"], capsys)
    assert got == 0
    assert edges_from_tsv(out).directed == {("A", "C"), ("B", "C")}
    cfg.write_text(json.dumps({"target": "C", "colour": "red"}))
    got, _, err = run(["learn", "--config", cfg], capsys)
    assert got == 2 and "colour" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "catbn", "simulate", "--benchmark", "collider",
                        "-n", "3"], capture_output=True, text=True, check=True)
    assert r.stdout.splitlines()[0] == "A,B,C"
