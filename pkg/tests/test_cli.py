import json

import pytest

from unicon4 import (complete_graph, format_edge_list, format_graph6, k6_minus_edge,
                     octahedron, parse_edge_list, parse_graph6, square_of_cycle)
from unicon4.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, g in (("c6sq", octahedron()), ("k6", complete_graph(6)),
                    ("k7", complete_graph(7)), ("c5sq", square_of_cycle(5)),
                    ("k6e", k6_minus_edge())):
        p = tmp_path / f"{name}.g6"
        p.write_text(format_graph6(g) + "\n")
        paths[name] = str(p)
    e = tmp_path / "c6sq.edges"
    e.write_text(format_edge_list(octahedron()))
    paths["c6sq_edges"] = str(e)
    bad = tmp_path / "bad.g6"
    bad.write_text("D~")
    paths["bad"] = str(bad)
    paths["dir"] = tmp_path
    return paths


class TestAnalyze:
    def test_uniform_graph_exits_zero(self, capsys, files):
        code, doc = run(capsys, "analyze", files["c6sq"])
        assert code == 0
        assert doc["uniform4"] is True and doc["kappa"] == 4
        assert doc["local_min"] == doc["local_max"] == 4
        assert doc["schema"] == "unicon4.report/v1"

    def test_k6_is_verdict_false_with_fan(self, capsys, files):
        code, doc = run(capsys, "analyze", files["k6"])
        assert code == 1
        assert doc["uniform4"] is False
        assert doc["witness"]["kind"] == "five_fan" and len(doc["witness"]["paths"]) == 5

    def test_malformed_input_exit_2(self, capsys, files):
        code, doc = run(capsys, "analyze", files["bad"])
        assert code == 2 and "error" in doc

    def test_edge_list_autodetect(self, capsys, files):
        code, doc = run(capsys, "analyze", files["c6sq_edges"])
        assert code == 0 and doc["n"] == 6

    def test_human_output(self, capsys, files):
        code = main(["analyze", files["c6sq"], "--human"])
        out = capsys.readouterr().out
        assert code == 0 and "uniform4: True" in out


class TestRemovable:
    def test_base_graph_has_none(self, capsys, files):
        code, doc = run(capsys, "removable", files["c5sq"])
        assert code == 0 and doc["removable_count"] == 0

    def test_k7_all_edges(self, capsys, files):
        code, doc = run(capsys, "removable", files["k7"])
        assert code == 0 and doc["removable_count"] == 21
        assert all(r["removable"] and r["structural"] for r in doc["edges"])

    def test_not_4_connected_rejected(self, capsys, files, tmp_path):
        p = tmp_path / "path.edges"
        p.write_text("n 3\n0 1\n1 2\n")
        code, doc = run(capsys, "removable", str(p))
        assert code == 2


class TestReduce:
    def test_k6_minus_edge(self, capsys, files):
        code, doc = run(capsys, "reduce", files["k6"], "--edge", "0,1")
        assert code == 0
        assert parse_graph6(doc["result_graph6"]) == k6_minus_edge()
        assert doc["id_map"] == {str(i): i for i in range(6)}

    def test_absent_edge(self, capsys, files):
        code, doc = run(capsys, "reduce", files["c6sq"], "--edge", "0,3")
        assert code == 2


class TestApply:
    def test_delta1_with_compat_check(self, capsys, files):
        code, doc = run(capsys, "apply", files["c6sq"], "--op", "delta1",
                        "--x", "0,1,3", "--y", "4", "--ex", "0-1", "--check-compat")
        assert code == 0 and doc["compatible"] is True
        out = parse_graph6(doc["result_graph6"])
        assert out.n == 7
        from unicon4 import is_uniformly_4_connected
        assert is_uniformly_4_connected(out)[0]

    def test_incompatible_spec_exit_1(self, capsys, files):
        code, doc = run(capsys, "apply", files["k6"], "--op", "delta1",
                        "--x", "0,1,2", "--y", "4", "--ex", "0-1", "--check-compat")
        assert code == 1 and doc["compatible"] is False
        assert doc["violation"]["predicate"] in ("quasi_3cc", "quasi_chord", "e_plus_quasi_3cc")

    def test_invalid_spec_exit_2_names_clause(self, capsys, files):
        code, doc = run(capsys, "apply", files["c6sq"], "--op", "delta1",
                        "--x", "0,1,3", "--y", "4", "--ex", "0-3")
        assert code == 2 and "ex-" in doc["message"]

    def test_delta2(self, capsys, files):
        code, doc = run(capsys, "apply", files["c6sq"], "--op", "delta2",
                        "--x", "0,1,2", "--yset", "3,4,5", "--ex", "0-2", "--ey", "3-5")
        assert code == 0
        assert parse_graph6(doc["result_graph6"]).n == 8

    def test_budget_exceeded_exit_3(self, capsys, files):
        from unicon4 import chording
        chording.clear_caches()
        code, doc = run(capsys, "apply", files["c6sq"], "--op", "delta1",
                        "--x", "0,1,2", "--y", "4", "--ex", "0-2",
                        "--check-compat", "--max-paths", "1")
        chording.clear_caches()
        assert code == 3 and doc["error"] == "budget-exceeded"


class TestDecomposeReplay:
    def test_round_trip_via_files(self, capsys, files, tmp_path):
        from unicon4 import construct, format_graph6 as fg
        g = construct.oracle_graphs(7)[0]
        src = tmp_path / "g.g6"
        src.write_text(fg(g) + "\n")
        trace_file = tmp_path / "trace.json"
        code, doc = run(capsys, "decompose", str(src), "-o", str(trace_file))
        assert code == 0 and doc["uniform4"] and doc["written"] == str(trace_file)
        code, doc = run(capsys, "replay", str(trace_file))
        assert code == 0
        from unicon4.graph_core import are_isomorphic
        assert are_isomorphic(parse_graph6(doc["result_graph6"]), g)

    def test_non_uniform_input_exit_1(self, capsys, files):
        code, doc = run(capsys, "decompose", files["k6"])
        assert code == 1 and doc["uniform4"] is False

    def test_tampered_trace_exit_2(self, capsys, files, tmp_path):
        from unicon4 import construct, format_graph6 as fg
        g = construct.oracle_graphs(7)[0]
        src = tmp_path / "g.g6"
        src.write_text(fg(g) + "\n")
        trace_file = tmp_path / "trace.json"
        main(["decompose", str(src), "-o", str(trace_file)])
        capsys.readouterr()
        doc = json.loads(trace_file.read_text())
        doc["steps"][0]["post_cert"] = fg(complete_graph(7))
        trace_file.write_text(json.dumps(doc))
        code, out = run(capsys, "replay", str(trace_file))
        assert code == 2 and out["error"] in ("CertMismatch", "StepInvalid")


class TestGenVerify:
    def test_gen_max_n_6(self, capsys):
        code, doc = run(capsys, "gen", "--max-n", "6")
        assert code == 0
        assert doc["counts_by_n"] == {"5": 1, "6": 1}
        assert doc["complete"] is True

    def test_verify_max_n_6(self, capsys):
        code, doc = run(capsys, "verify", "--max-n", "6")
        assert code == 0 and doc["holds"] is True
        assert doc["oracle_counts"] == doc["generated_counts"] == {"5": 1, "6": 1}
        assert all(doc["decompose_ok"].values())


class TestConvert:
    def test_g6_to_edges_round_trip(self, capsys, files):
        code, doc = run(capsys, "convert", files["c6sq"], "--to", "edges")
        assert code == 0
        assert parse_edge_list(doc["output"]) == octahedron()

    def test_edges_to_g6(self, capsys, files):
        code, doc = run(capsys, "convert", files["c6sq_edges"], "--to", "g6")
        assert parse_graph6(doc["output"]) == octahedron()

    def test_dot(self, capsys, files):
        code, doc = run(capsys, "convert", files["c5sq"], "--to", "dot")
        assert code == 0 and doc["output"].count("--") == 10

    def test_written_file(self, capsys, files, tmp_path):
        out = tmp_path / "out.edges"
        code, doc = run(capsys, "convert", files["c6sq"], "--to", "edges", "-o", str(out))
        assert code == 0 and parse_edge_list(out.read_text()) == octahedron()


class TestOutputContract:
    def test_all_reports_carry_schema_and_parse_back(self, capsys, files):
        for argv in (["analyze", files["c6sq"]],
                     ["removable", files["c5sq"]],
                     ["reduce", files["k6"], "--edge", "0,1"],
                     ["convert", files["c6sq"], "--to", "g6"],
                     ["gen", "--max-n", "5"]):
            code = main(argv)
            doc = json.loads(capsys.readouterr().out)
            assert doc["schema"] == "unicon4.report/v1"
            assert doc["command"] == argv[0]

    def test_threads_flag_accepted(self, capsys, files, monkeypatch):
        monkeypatch.setenv("UNICON4_THREADS", "4")
        code, doc = run(capsys, "analyze", files["c6sq"], "--threads", "2")
        assert code == 0
