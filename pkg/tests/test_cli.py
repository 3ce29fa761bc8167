import io
import json
import subprocess
import sys

import pytest

from crooked import cli, codes, gf2m, graphs, vbf
from crooked.errors import RequiresApn
from crooked.formats import format_truth_table, read_truth_table


def run(*argv):
    buf = io.StringIO()
    code = cli.run(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run("--json", *argv)
    assert code == 0
    return json.loads(text)


def strip_timings(report):
    return {k: v for k, v in report.items() if k != "timings"}


def test_analyze_gold_m3():
    code, text = run("analyze", "3", "--power", "3", "--preparata", "--graph")
    assert code == 0
    assert "crooked=yes" in text
    assert "|P_f|=256 d(P_f)=5" in text
    assert "IA={15,14,1;1,2,15}" in text
    assert "antipodal=yes" in text


def test_analyze_kasami_m5():
    rep = run_json("analyze", "5", "--power", "13", "--code", "--graph")
    assert rep["apn"]["status"] == "apn"
    assert rep["crooked"]["status"] == "violation3"
    assert rep["code"]["min_distance"] == 5 and rep["code"]["k"] == 21
    g = rep["graph"]
    assert g["intersection_array"] is None and g["matches_crooked_array"] is False
    ce = g["counterexample"]
    G = graphs.build_crooked_graph(vbf.from_power(gf2m.field_new(5), 13))
    assert graphs.Counterexample(ce["v"], ce["u"], ce["d"], tuple(ce["counts"]), tuple(ce["expected"])).recheck(G)


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "5", "--power", "0"],
        ["analyze", "5", "--power", "31"],
        ["analyze", "4", "--power", "3"],
        ["analyze", "3", "--power", "3", "--modulus", "15"],
        ["witness", "3", "--tt", "/nonexistent/table.txt"],
    ],
)
def test_input_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_search_examples():
    res = run_json("search", "3")
    assert res["crooked_exponents"] == [3, 5, 6] and res["consistent"]
    res = run_json("search", "5")
    crooked = set(res["crooked_exponents"])
    assert {3, 5, 9, 18} <= crooked and 13 not in crooked and 30 not in crooked
    by_rep = {r["representative"]: r for r in res["classes"]}
    assert by_rep[11]["apn"] and not by_rep[11]["crooked"]  # class of 13
    assert by_rep[15]["apn"] and not by_rep[15]["crooked"]  # class of 30
    code, text = run("search", "3")
    assert "crooked <=> gold-type: yes" in text and "crooked classes: {3,5,6}" in text


def test_guards_exit_3(capsys):
    assert run("search", "11")[0] == 3
    assert "search guard" in capsys.readouterr().err
    assert run("analyze", "7", "--power", "3", "--graph")[0] == 3
    assert "--graph guard" in capsys.readouterr().err
    assert run("export-graph", "9", "--power", "3")[0] == 3


def test_preparata_membership_only_above_m3():
    rep = run_json("analyze", "5", "--power", "3", "--preparata")
    assert rep["preparata"]["status"] == "membership-only at this m"


@pytest.mark.parametrize("d", [13, 30])
def test_witness_examples(d):
    code, text = run("witness", "5", "--power", str(d))
    assert code == 0
    res = run_json("witness", "5", "--power", str(d))
    assert res["distance"] <= 4 and f"distance {res['distance']}" in text
    f = vbf.from_power(gf2m.field_new(5), d)
    for w in res["words"]:
        assert w["member"] and codes.word_member(f, codes.PreparataWord.from_hex(5, w["hex"]))
    a, b = (codes.PreparataWord.from_hex(5, w["hex"]) for w in res["words"])
    assert a.distance(b) == res["distance"]


def test_witness_crooked():
    code, text = run("witness", "3", "--power", "3")
    assert code == 0 and text.strip() == "function is crooked"


def _rank_deficient_violation3(tables):
    for f in tables:
        if codes.parity_rank(codes.build_parity_check(f)) < 2 * f.m:
            try:
                return f, vbf.first_violation3(f)
            except ValueError:
                continue
    raise AssertionError("no rank-deficient table with a condition-3 violation")


def test_witness_requires_apn(random_tables3, monkeypatch, capsys):
    # the CLI only reaches the condition-3 construction for APN inputs, so feed it
    # a rank-deficient table together with a valid violation
    f, v = _rank_deficient_violation3(random_tables3)
    assert v.recheck(f)
    with pytest.raises(RequiresApn):
        codes.close_pair_witness(f, v)

    monkeypatch.setattr(cli, "load_function", lambda args: (f, {}))
    monkeypatch.setattr(vbf, "is_crooked", lambda g, *a: v)
    assert run("witness", "3", "--power", "3")[0] == 4
    assert "rank" in capsys.readouterr().err


def test_tt_file_source(tmp_path, random_tables3):
    f = random_tables3[7]
    path = tmp_path / "f.txt"
    path.write_text(format_truth_table(f))
    assert read_truth_table(path).table.tolist() == f.table.tolist()
    rep = run_json("analyze", "3", "--tt", str(path), "--preparata")
    assert rep["input"]["source"] == "table" and rep["input"]["exponent"] is None
    crooked = isinstance(vbf.is_crooked(f), vbf.Crooked)
    assert (rep["preparata"]["min_distance"] == 5) == crooked
    assert run("analyze", "5", "--tt", str(path))[0] == 2
    path.write_text("3\n11\n1 2 3\n")
    assert run("analyze", "3", "--tt", str(path))[0] == 2


def test_random_source_is_seeded():
    a = run_json("analyze", "5", "--random", "--seed", "4")
    b = run_json("--seed", "4", "analyze", "5", "--random")
    c = run_json("analyze", "5", "--random", "--seed", "5")
    assert strip_timings(a) == strip_timings(b)
    assert a["input"]["digest"] != c["input"]["digest"]
    assert a["input"]["seed"] == 4


def test_modulus_option():
    # x^3 + x^2 + 1 is the other primitive cubic
    rep = run_json("analyze", "3", "--power", "3", "--modulus", "13", "--preparata")
    assert rep["input"]["modulus"] == 13
    assert rep["crooked"]["status"] == "crooked" and rep["preparata"]["min_distance"] == 5
    res = run_json("search", "5", "--modulus", "41")
    assert res["modulus"] == 41 and res["consistent"]


def _rerun(report):
    """Recompute every stage from the recorded inputs alone."""
    inp = report["input"]
    argv = ["analyze", str(inp["m"]), "--modulus", str(inp["modulus"])]
    if inp["source"] == "power":
        argv += ["--power", str(inp["exponent"])]
    elif inp["source"] == "random":
        argv += ["--random", "--seed", str(inp["seed"])]
    else:
        argv += ["--tt", inp["path"]]
    argv += [f"--{s}" for s in ("code", "preparata", "graph") if s in report]
    return run_json(*argv)


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "3", "--power", "3", "--preparata", "--graph", "--code"],
        ["analyze", "5", "--power", "13", "--code", "--graph"],
        ["analyze", "3", "--random", "--seed", "11", "--preparata", "--graph"],
    ],
)
def test_json_round_trip(argv):
    report = run_json(*argv)
    parsed = json.loads(json.dumps(report))
    assert strip_timings(_rerun(parsed)) == strip_timings(report)
    assert parsed["schema"] == 1 and set(parsed["timings"]) >= {"apn", "crooked"}


def test_json_claims_recheck_against_library():
    rep = run_json("analyze", "5", "--power", "30", "--code")
    f = vbf.from_power(gf2m.field_new(5), 30)
    verdict = vbf.verdict_from_dict(rep["crooked"])
    assert verdict == vbf.is_crooked(f) and verdict.recheck(f)
    H = codes.build_parity_check(f)
    for w in rep["code"]["witnesses"]:
        assert H.syndrome(w["support"]) == w["syndrome"] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "3", "--power", "3", "--preparata", "--graph", "--code"],
        ["analyze", "5", "--power", "13", "--code", "--graph"],
        ["analyze", "3", "--power", "1", "--code", "--preparata"],
    ],
)
def test_text_and_json_agree(argv):
    rep = run_json(*argv)
    _, text = run(*argv)
    assert text.splitlines()[:-1] == cli.format_report(rep).splitlines()[:-1]
    assert f"apn={'yes' if rep['apn']['status'] == 'apn' else 'no'}" in text
    if "code" in rep:
        d = ">=6" if rep["code"]["min_distance_capped"] else str(rep["code"]["min_distance"])
        assert f"k={rep['code']['k']} d(C_f)={d}" in text
    if rep.get("graph", {}).get("counterexample"):
        ce = rep["graph"]["counterexample"]
        assert f"v={ce['v']} u={ce['u']} d={ce['d']}" in text


def test_search_text_and_json_agree():
    res = run_json("search", "5")
    _, text = run("search", "5")
    assert text == cli.format_search(res) + "\n"


def test_export_graph(tmp_path):
    path = tmp_path / "g.txt"
    code, text = run("export-graph", "3", "--power", "3", "-o", str(path))
    assert code == 0 and "wrote 960 edges" in text
    with open(path) as fh:
        header, G = graphs.read_edge_list(fh)
    assert header["N"] == 128 and header["degree"] == 15 and header["exponent"] == 3
    assert graphs.intersection_array(G) == graphs.crooked_array(3)
    code, text = run("export-graph", "3", "--power", "3")
    assert text == path.read_text()


def test_help_lists_guards(capsys):
    with pytest.raises(SystemExit):
        run("analyze", "--help")
    text = capsys.readouterr().out
    assert "feasibility guards" in text and "m <= 5" in text and "exit codes" in text


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "crooked", "witness", "3", "--power", "3"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert out.stdout.strip() == "function is crooked"


def test_exactly_one_source_required():
    with pytest.raises(SystemExit):
        run("analyze", "3")
    with pytest.raises(SystemExit):
        run("analyze", "3", "--power", "3", "--random")
