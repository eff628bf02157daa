"""End-to-end command line behavior: records, exit codes, file round trips."""

import json

import pytest

from coloring_games.cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VERIFY, main
from coloring_games.games import TT_BYTES_ENV
from coloring_games.graphs import parse_graph_text


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, [json.loads(line) for line in out.splitlines()]


def test_solve_closed_form_cycle(capsys):
    code, out = run(capsys, "solve", "--ruleset", "proper", "--k", "2",
                    "--graph", "cycle:8")
    assert code == EXIT_OK
    assert "outcome: P" in out and "method: closed-form" in out


def test_solve_weak_cycle_json(capsys):
    code, recs = run_json(capsys, "solve", "--ruleset", "weak", "--k", "2",
                          "--graph", "cycle:9")
    assert code == EXIT_OK
    (rec,) = recs
    assert rec["outcome"] == "N" and rec["grundy"] == 1
    assert rec["method"] == "closed-form"
    assert "winning_move" not in rec  # only search produces one


def test_solve_distance_path(capsys):
    code, out = run(capsys, "solve", "--ruleset", "distance", "--d", "2",
                    "--k", "2", "--graph", "path:13")
    assert code == EXIT_OK
    assert "outcome: N" in out


def test_solve_search_has_winning_move_only_when_n(capsys):
    code, recs = run_json(capsys, "solve", "--ruleset", "proper", "--k", "1",
                          "--graph", "path:5", "--method", "search")
    assert code == EXIT_OK and recs[0]["outcome"] == "N"
    assert recs[0]["method"] == "search"
    assert set(recs[0]["winning_move"]) == {"vertex", "color"}

    code, recs = run_json(capsys, "solve", "--ruleset", "proper", "--k", "1",
                          "--graph", "cycle:4", "--method", "search")
    assert code == EXIT_OK and recs[0]["outcome"] == "P"
    assert "winning_move" not in recs[0]


def test_solve_involution_method(capsys):
    code, recs = run_json(capsys, "solve", "--ruleset", "proper", "--k", "2",
                          "--graph", "grid:3,3", "--method", "involution")
    assert code == EXIT_OK
    assert recs[0] == {**recs[0], "outcome": "N", "method": "involution"}
    assert "grundy" not in recs[0]

    code, recs = run_json(capsys, "solve", "--ruleset", "proper", "--k", "2",
                          "--graph", "hypercube:3", "--method", "involution")
    assert recs[0]["outcome"] == "P"


def test_solve_forced_method_can_report_unknown(capsys):
    code, recs = run_json(capsys, "solve", "--ruleset", "proper", "--k", "3",
                          "--graph", "path:4", "--method", "closed-form")
    assert code == EXIT_OK
    assert recs[0]["outcome"] == "unknown"


def test_solve_reads_graph_file(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("graph undirected\nvertices 3\nedge 0 1\nedge 1 2\nk 2\ncolor 0 1\n")
    code, recs = run_json(capsys, "solve", "--ruleset", "proper", "--file", str(f))
    assert code == EXIT_OK
    assert recs[0]["k"] == 2 and recs[0]["method"] == "search"


def test_solve_usage_errors(capsys):
    assert run(capsys, "solve", "--ruleset", "proper", "--k", "2",
               "--graph", "nope:4")[0] == EXIT_USAGE
    assert run(capsys, "solve", "--ruleset", "proper",
               "--graph", "path:3")[0] == EXIT_USAGE  # no k anywhere
    assert run(capsys, "solve", "--ruleset", "weak", "--k", "2", "--d", "2",
               "--graph", "path:3")[0] == EXIT_USAGE  # --d without distance


def test_grundy_seq_deterministic(capsys):
    _, first = run(capsys, "grundy-seq", "--kmax", "10")
    _, second = run(capsys, "grundy-seq", "--kmax", "10")
    assert first == second
    lines = first.splitlines()
    assert lines[0] == "1,0,0,1"
    assert len(lines) == 11 and lines[-1].startswith("# summary ")


def test_grundy_seq_summary_json(capsys):
    code, recs = run_json(capsys, "grundy-seq", "--kmax", "200")
    assert code == EXIT_OK
    assert recs[0] == {"k": 1, "gA": 0, "gC": 0, "gD": 1}
    summary = recs[-1]["summary"]
    assert summary["d_p_positions"] == 24
    assert summary["max_value"] > 0 and summary["largest_rare_index"] <= 200


def test_grundy_seq_budget_abort_leaves_checkpoint(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(TT_BYTES_ENV, "40000")
    ckpt = tmp_path / "c.bin"
    code, _ = run(capsys, "grundy-seq", "--kmax", "50000",
                  "--checkpoint", str(ckpt), "--checkpoint-every", "2000")
    assert code == EXIT_BUDGET
    assert ckpt.exists()
    monkeypatch.delenv(TT_BYTES_ENV)
    code, out = run(capsys, "tables", "info", "--table", str(ckpt))
    assert code == EXIT_OK and "kmax: 6000" in out


def test_grundy_seq_resume_matches_fresh(capsys, tmp_path):
    ckpt = tmp_path / "c.bin"
    run(capsys, "tables", "compute", "--kmax", "120", "--out", str(ckpt))
    _, resumed = run(capsys, "grundy-seq", "--kmax", "400", "--checkpoint", str(ckpt))
    _, fresh = run(capsys, "grundy-seq", "--kmax", "400")
    assert resumed == fresh


def test_p_positions_record(capsys):
    code, recs = run_json(capsys, "p-positions", "--kmax", "200", "--class", "D")
    assert code == EXIT_OK
    assert recs[0]["count"] == 24
    assert recs[0]["lengths"][:5] == [3, 6, 11, 15, 16]

    code, recs = run_json(capsys, "p-positions", "--kmax", "50", "--class", "A")
    assert recs[0]["lengths"] == [1]


def test_sequential_examples(capsys):
    code, out = run(capsys, "sequential", "--graph", "path:5",
                    "--order", "1,0,2,3,4", "--check")
    assert code == EXIT_OK
    assert "outcome: N" in out and "winner: first" in out and "check: ok" in out


def test_sequential_random_order_is_seeded(capsys):
    _, a = run(capsys, "sequential", "--graph", "path:9", "--order", "random",
               "--seed", "3")
    _, b = run(capsys, "sequential", "--graph", "path:9", "--order", "random",
               "--seed", "3")
    assert a == b
    _, c = run(capsys, "sequential", "--graph", "path:9", "--order", "random",
               "--seed", "4")
    assert a != c


def test_sequential_order_from_file(capsys, tmp_path):
    f = tmp_path / "p.txt"
    f.write_text("graph undirected\nvertices 3\nedge 0 1\nedge 1 2\norder 1 0 2\n")
    code, recs = run_json(capsys, "sequential", "--file", str(f), "--check")
    assert code == EXIT_OK
    assert recs[0]["outcome"] == "N" and recs[0]["check"] == "ok"
    # explicit flag clashing with the file's order is refused
    assert run(capsys, "sequential", "--file", str(f),
               "--order", "0 1 2")[0] == EXIT_USAGE


def test_sequential_usage_errors(capsys):
    assert run(capsys, "sequential", "--graph", "path:5",
               "--order", "random")[0] == EXIT_USAGE  # no seed
    assert run(capsys, "sequential", "--graph", "path:5")[0] == EXIT_USAGE
    assert run(capsys, "sequential", "--graph", "cycle:5",
               "--order", "random", "--seed", "1")[0] == EXIT_USAGE
    assert run(capsys, "sequential", "--graph", "path:5",
               "--order", "0 1 2")[0] == EXIT_USAGE


def test_reduce_text_round_trip(capsys):
    code, out = run(capsys, "reduce", "--from", "kayles", "--to", "proper",
                    "--k", "3", "--graph", "path:2", "--verify")
    assert code == EXIT_OK
    doc = parse_graph_text(out)
    assert doc.graph.n == 6 and doc.k == 3
    assert sum(1 for c in doc.coloring if c is not None) == 4
    assert "# map 0 0" in out and "# map 1 3" in out


def test_reduce_json_record(capsys):
    code, recs = run_json(capsys, "reduce", "--from", "kayles", "--to", "distance",
                          "--k", "2", "--graph", "path:3", "--verify")
    assert code == EXIT_OK
    rec = recs[0]
    assert rec["equivalent"] is True
    assert rec["reduced_vertices"] == 3 + 3 * 2
    assert rec["vertex_map"] == {"0": 0, "1": 1, "2": 2}
    assert parse_graph_text(rec["graph_text"]).graph.n == rec["reduced_vertices"]


def test_reduce_writes_file(capsys, tmp_path):
    dest = tmp_path / "out.txt"
    code, _ = run(capsys, "reduce", "--from", "kayles", "--to", "oriented",
                  "--k", "2", "--graph", "path:2", "--out", str(dest))
    assert code == EXIT_OK
    doc = parse_graph_text(dest.read_text())
    assert doc.graph.directed and doc.graph.n == 4


def test_reduce_usage_errors(capsys):
    assert run(capsys, "reduce", "--from", "kayles", "--to", "proper",
               "--graph", "path:2")[0] == EXIT_USAGE  # no k
    assert run(capsys, "reduce", "--from", "kayles", "--to", "oriented-br",
               "--k", "3", "--graph", "path:2")[0] == EXIT_USAGE
    assert run(capsys, "reduce", "--from", "kayles", "--to", "proper", "--k", "2",
               "--graph", "path:8", "--verify")[0] == EXIT_USAGE  # over cap


def test_verify_suites_pass(capsys):
    assert run(capsys, "verify", "recursion", "--kmax", "6")[0] == EXIT_OK
    assert run(capsys, "verify", "sequential", "--n", "4",
               "--exhaustive")[0] == EXIT_OK
    assert run(capsys, "verify", "reductions", "--n", "3")[0] == EXIT_OK
    code, out = run(capsys, "verify", "closed-forms")
    assert code == EXIT_OK and "6/6 checks passed" in out


def test_verify_failure_exits_4(capsys, monkeypatch):
    monkeypatch.setattr("coloring_games.sequential.decide_path", lambda perm: "N")
    code, out = run(capsys, "verify", "sequential", "--n", "4", "--exhaustive")
    assert code == EXIT_VERIFY
    assert "FAIL" in out


def test_verify_sampled_needs_seed(capsys):
    assert run(capsys, "verify", "sequential", "--n", "9")[0] == EXIT_USAGE
    code, recs = run_json(capsys, "verify", "sequential", "--n", "9",
                          "--seed", "1", "--samples", "50")
    assert code == EXIT_OK
    assert recs[-1] == {"suite": "sequential", "passed": 1, "total": 1}


def test_tables_round_trip(capsys, tmp_path):
    t = tmp_path / "t.bin"
    code, _ = run(capsys, "tables", "compute", "--kmax", "300", "--out", str(t))
    assert code == EXIT_OK
    code, _ = run(capsys, "tables", "extend", "--table", str(t), "--kmax", "500")
    assert code == EXIT_OK
    code, recs = run_json(capsys, "tables", "info", "--table", str(t))
    assert recs[0]["kmax"] == 500
    code, out = run(capsys, "tables", "export-csv", "--table", str(t))
    assert out.splitlines()[0] == "1,0,0,1" and len(out.splitlines()) == 500

    csv_dest = tmp_path / "t.csv"
    run(capsys, "tables", "export-csv", "--table", str(t), "--out", str(csv_dest))
    assert csv_dest.read_text() == out


def test_tables_rejects_corrupt_file(capsys, tmp_path):
    t = tmp_path / "t.bin"
    run(capsys, "tables", "compute", "--kmax", "50", "--out", str(t))
    raw = bytearray(t.read_bytes())
    raw[20] ^= 0xFF
    t.write_bytes(raw)
    assert run(capsys, "tables", "info", "--table", str(t))[0] == EXIT_USAGE


def test_argparse_usage_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--ruleset", "bogus", "--graph", "path:3"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_console_script_entry_point():
    import subprocess
    import sys
    proc = subprocess.run(
        [sys.executable, "-m", "coloring_games.cli", "grundy-seq", "--kmax", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "1,0,0,1"