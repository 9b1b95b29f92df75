import json
import math
import subprocess
import sys

import pytest

from irregbip.bounds import BoundReport
from irregbip.canon import is_isomorphic
from irregbip.cli import RunConfig, UsageError, limit_rows, main
from irregbip.constructions import b_graph, complete_bipartite, h_graph, path
from irregbip.formats import graph6_decode, graph6_encode, read_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_b6(capsys):
    code, out, _ = run(capsys, "construct", "B", "6")
    assert code == 0
    g = graph6_decode(out.strip())
    assert g == b_graph(6)
    assert is_isomorphic(g, complete_bipartite(3, 3).remove_edges([(0, 3)]))


def test_construct_h84(capsys):
    code, out, _ = run(capsys, "construct", "H", "8", "4")
    assert code == 0
    assert is_isomorphic(graph6_decode(out.strip()), complete_bipartite(4, 4).remove_edges([(0, 4)]))


def test_construct_path_edges(capsys):
    code, out, _ = run(capsys, "construct", "path", "5", "--format", "edges")
    assert code == 0
    assert out.splitlines()[1:] == ["0 1", "1 2", "2 3", "3 4"]
    assert read_edge_list(out) == path(5)


def test_construct_json_and_out(capsys, tmp_path):
    target = tmp_path / "k23.json"
    code, out, _ = run(capsys, "construct", "K", "2", "3", "--format", "json", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["n"] == 5 and len(data["edges"]) == 6
    assert graph6_decode(data["graph6"]) == complete_bipartite(2, 3)


def test_construct_bad_params(capsys):
    assert run(capsys, "construct", "H", "8")[0] == 2
    assert run(capsys, "construct", "B", "5")[0] == 2


def test_spectral_text_and_json(capsys):
    code, out, _ = run(capsys, "spectral", "--family", "B", "--n", "6")
    assert code == 0
    assert "rho 2.732050808" in out
    code, out, _ = run(capsys, "spectral", "--graph6", graph6_encode(path(4)), "--format", "json")
    data = json.loads(out)
    assert data["rho"] == pytest.approx(1.618033989, abs=1e-9)
    assert len(data["x"]) == 4


def test_spectral_edges_file(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("3 2\n0 1\n1 2\n")
    code, out, _ = run(capsys, "spectral", "--edges", str(f))
    assert code == 0 and "rho 1.414213562" in out


def test_spectral_needs_one_input(capsys):
    assert run(capsys, "spectral")[0] == 2
    assert run(capsys, "spectral", "--family", "B")[0] == 2
    assert run(capsys, "spectral", "--graph6", "C~", "--family", "B", "--n", "6")[0] == 2


def test_spectral_disconnected_is_usage_error(capsys):
    g6 = graph6_encode(read_edge_list("4 2\n0 1\n2 3\n"))
    code, _, err = run(capsys, "spectral", "--graph6", g6)
    assert code == 2 and "connected" in err


def test_tridiag_m5(capsys):
    code, out, _ = run(capsys, "tridiag", "5")
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "tridiag", "5", "--format", "json")
    data = json.loads(out)
    assert data["least_closed"] == pytest.approx(4 * math.sin(math.pi / 22) ** 2, rel=1e-9)
    assert data["ok"] is True


def test_tridiag_negative_d(capsys):
    code, out, _ = run(capsys, "tridiag", "5", "--b", "2", "--d", "-1", "--format", "json")
    assert code == 0
    assert json.loads(out)["sturm"][0] == pytest.approx(4 * math.sin(math.pi / 11) ** 2, rel=1e-9)


def test_tridiag_usage(capsys):
    assert run(capsys, "tridiag", "5", "--b", "2")[0] == 2
    assert run(capsys, "tridiag", "5", "--b", "2", "--d", "0")[0] == 2


def test_bounds_b6(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "B", "--n", "6", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    rep = BoundReport(**row)
    assert rep.all_ok() and rep.lemma5_ok


def test_bounds_p4_text_and_csv(capsys):
    g6 = graph6_encode(path(4))
    code, out, _ = run(capsys, "bounds", "--graph6", g6)
    assert code == 0 and "stevanovic_ok True" in out
    code, out, _ = run(capsys, "bounds", "--graph6", g6, "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 2


def test_bounds_h_family(capsys):
    code, out, _ = run(capsys, "bounds", "--family", "H", "--n", "8", "--delta", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)[0]["gap"] == pytest.approx(0.2087121525, abs=1e-9)


def test_bounds_malformed_graph6(capsys):
    code, _, err = run(capsys, "bounds", "--graph6", "C~~~~")
    assert code == 2 and err


def test_bounds_regular_input(capsys):
    assert run(capsys, "bounds", "--graph6", graph6_encode(complete_bipartite(3, 3)))[0] == 2


def test_search_b6(capsys):
    code, out, _ = run(capsys, "search", "6", "3", "max-rho", "--workers", "1")
    assert code == 0
    lines = dict(line.split(" ", 1) for line in out.splitlines() if not line.startswith("certificate"))
    assert is_isomorphic(graph6_decode(lines["winner"]), b_graph(6))
    assert lines["unique"] == "True"


def test_search_json_round_trip(capsys):
    code, out, _ = run(capsys, "search", "8", "4", "--format", "json", "--workers", "1")
    assert code == 0
    data = json.loads(out)
    assert is_isomorphic(graph6_decode(data["winner"]), h_graph(8, 4))
    assert data["unique"] and all(c["ok"] for c in data["certificates"])
    assert json.loads(json.dumps(data)) == data


def test_search_h73_graph6(capsys):
    code, out, _ = run(capsys, "search", "7", "3", "--format", "graph6", "--workers", "1")
    assert code == 0 and is_isomorphic(graph6_decode(out.strip()), h_graph(7, 3))


def test_search_population(capsys):
    code, out, _ = run(capsys, "search", "6", "3", "--population", "--workers", "1")
    assert code == 0 and len(out.splitlines()) == 9


def test_search_min_ac(capsys):
    code, out, _ = run(capsys, "search", "10", "3", "min-ac", "--format", "json", "--workers", "1")
    assert code == 0
    assert json.loads(out)["objective_value"] == pytest.approx(1.0, abs=1e-9)


def test_search_errors(capsys):
    assert run(capsys, "search", "13", "3")[0] == 2
    assert run(capsys, "search", "5", "5")[0] == 2
    code, _, err = run(capsys, "search", "3", "2", "min-ac", "--workers", "1")
    assert code == 2 and "no graph" in err


def test_limit_table(capsys):
    code, out, _ = run(capsys, "limit-table", "6", "7", "64")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].split()[-1] == "9.869604401"
    row6 = lines[1].split()
    assert float(row6[2]) == pytest.approx(36 * (2 - math.sqrt(3)), abs=1e-8)
    assert lines[2].split()[3] == "-"


def test_limit_table_csv_json(capsys):
    code, out, _ = run(capsys, "limit-table", "8", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "n,rho,scaled_gap,lower,upper,ok"
    code, out, _ = run(capsys, "limit-table", "8", "--format", "json")
    data = json.loads(out)
    assert data["rows"][0]["ok"] is True
    assert data["pi_squared"] == pytest.approx(math.pi ** 2, rel=1e-9)


def test_limit_table_rejects_small_n(capsys):
    assert run(capsys, "limit-table", "4")[0] == 2


def test_limit_rows_512():
    (row,) = limit_rows([512])
    assert 9.83 <= row["scaled_gap"] <= 10.15
    assert row["lower"] <= row["scaled_gap"] <= row["upper"]


def test_limit_rows_bracket_shrinks():
    rows = limit_rows([8, 16, 32, 64])
    widths = [r["upper"] - r["lower"] for r in rows]
    assert widths == sorted(widths, reverse=True)


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--family", "B", "--n", "8")
    assert code == 0 and json.loads(out)["ok"] is True
    bad = read_edge_list("6 6\n0 3\n0 4\n1 3\n1 4\n1 5\n2 5\n")
    code, out, _ = run(capsys, "verify", "--graph6", graph6_encode(bad))
    assert code == 1 and json.loads(out)["ok"] is False


def test_verify_non_bipartite(capsys):
    g = read_edge_list("4 4\n0 1\n1 2\n0 2\n2 3\n")
    assert run(capsys, "verify", "--graph6", graph6_encode(g))[0] == 2


def test_bad_tol(capsys):
    assert run(capsys, "tridiag", "5", "--tol", "0")[0] == 2


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("spectral", fmt="xml")
    with pytest.raises(UsageError):
        RunConfig("spectral", workers=0)


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "irregbip", "construct", "B", "6"],
                         capture_output=True, text=True, check=True).stdout
    assert graph6_decode(out.strip()) == b_graph(6)
