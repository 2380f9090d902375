import csv
import io
import json
import subprocess
import sys

import pytest

from conftest import lee
from distchrom import cli
from distchrom.errors import NumericFailureError
from distchrom.graphs import write_edge_list


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


class TestBound:
    @pytest.mark.parametrize("argv, expected", [
        (["lee:3:7", "--t", "2", "--method", "closed_t2_regular"], 7),
        (["qn:5", "--t", "3", "--method", "closed_t3_regular"], 16),
        (["qn:10", "--t", "5", "--method", "hypercube_t45"], 114),
        (["qn:9", "--t", "4", "--method", "ngo_lower"], 52),
        (["lee:3:4", "--t", "2", "--method", "lee_theorem"], 8),
        (["cycle:5", "--t", "2", "--method", "closed_t2_general"], 5),
        (["lee:3:5", "--t", "4", "--method", "lp_minor"], 32),
    ])
    def test_examples(self, capsys, argv, expected):
        report = run_json(capsys, "bound", *argv)
        assert report["value"] == expected
        assert set(report) >= {"graph", "t", "method", "value", "polynomial_coefficients",
                               "W_p", "lambda_p", "plain", "floor_enhanced"}

    def test_graph_ids(self, capsys):
        assert run_json(capsys, "bound", "qn:5", "--t", "3", "--method", "closed_t3_regular")["graph"] == "Q5"
        assert run_json(capsys, "bound", "lee:3:7", "--t", "2", "--method", "closed_t2_regular")["graph"] == "G(3,7)"

    def test_file_graph(self, capsys, tmp_path):
        path = tmp_path / "g.txt"
        write_edge_list(lee(2, 5), path)
        report = run_json(capsys, "bound", f"file:{path}", "--t", "2", "--method", "lp_general")
        assert report["value"] == 5

    def test_pretty(self, capsys):
        code, out, _ = run(capsys, "bound", "qn:4", "--t", "2", "--method", "closed_t2_regular", "--pretty")
        assert code == 0 and not out.startswith("{") and "value" in out

    def test_dump_lp(self, capsys, tmp_path):
        path = tmp_path / "m.lp"
        run_json(capsys, "bound", "qn:6", "--t", "3", "--method", "lp_minor", "--dump-lp", str(path))
        assert path.read_text().startswith("Minimize")

    def test_inapplicable_exits_2(self, capsys):
        code, out, err = run(capsys, "bound", "lee:3:3", "--t", "4", "--method", "lp_minor")
        assert code == 2 and out == "" and "distchrom:" in err
        assert run(capsys, "bound", "lee:3:3", "--t", "2", "--method", "lee_theorem")[0] == 2
        assert run(capsys, "bound", "qn:3", "--t", "4", "--method", "hypercube_t45")[0] == 2

    def test_bad_graph_spec_exits_2(self, capsys, tmp_path):
        for spec in ("qn:x", "torus:3", "lee:3", f"file:{tmp_path / 'missing.txt'}"):
            assert run(capsys, "bound", spec, "--t", "2", "--method", "closed_t2_general")[0] == 2

    def test_numeric_failure_exits_3(self, capsys, tmp_path, monkeypatch):
        def broken(*_a, **_k):
            raise NumericFailureError("no convergence")

        monkeypatch.setattr(cli, "numeric_spectrum", broken)
        path = tmp_path / "g.txt"
        write_edge_list(lee(2, 5), path)
        code, _, err = run(capsys, "bound", f"file:{path}", "--t", "2", "--method", "closed_t2_general")
        assert code == 3 and "numeric" in err


class TestLee:
    def test_examples(self, capsys):
        assert run_json(capsys, "lee", "perfect", "3", "7")["exists"] is True
        assert run_json(capsys, "lee", "wprime", "2", "7")["member"] is False
        assert run_json(capsys, "lee", "perfect", "3", "4")["exists"] is False

    def test_perfect_reasons(self, capsys):
        out = run_json(capsys, "lee", "perfect", "4", "6")
        assert out["radical_of_2n_plus_1"] == 3
        assert out["radical_divides_q"] == out["2n_plus_1_divides_q_pow_n"] is True

    def test_validate(self, capsys, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("2 5\n" + "".join(f"{i} {2 * i % 5}\n" for i in range(5)))
        out = run_json(capsys, "lee", "validate", str(path))
        assert out["min_distance"] == 3 and out["perfect"] is True and out["size"] == 5

    def test_validate_malformed(self, capsys, tmp_path):
        path = tmp_path / "c.txt"
        path.write_text("2 5\n0 7\n")
        assert run(capsys, "lee", "validate", str(path))[0] == 2


class TestOracle:
    @pytest.mark.parametrize("argv, expected", [
        (["qn:4", "--t", "2", "chi"], 8),
        (["lee:2:5", "--t", "2", "alpha"], 5),
        (["qn:3", "--t", "3", "chi"], 8),
    ])
    def test_examples(self, capsys, argv, expected):
        out = run_json(capsys, "oracle", *argv)
        assert out["status"] == "exact" and out["value"] == expected
        assert "witness" not in out

    def test_witness(self, capsys):
        out = run_json(capsys, "oracle", "lee:2:5", "--t", "2", "alpha", "--witness")
        assert len(out["witness"]) == 5

    def test_timeout_is_json(self, capsys):
        out = run_json(capsys, "oracle", "qn:8", "--t", "2", "chi", "--budget", "0.2")
        assert out["status"] == "timeout" and out["lower"] <= out["upper"]

    def test_bad_budget_env(self, capsys, monkeypatch):
        monkeypatch.setenv("DISTCHROM_BUDGET", "never")
        assert run(capsys, "oracle", "qn:3", "--t", "2", "chi")[0] == 2


def _no_oracle(monkeypatch):
    monkeypatch.setattr(cli, "oracle_cell", lambda spec, t, budget: "-")


EXPECTED_BOUND_COLUMNS = {
    "1a": [["4", "4", "8", "7", "8", "8", "11", "11", "13", "13", "15", "15", "16", "16"]],
    "1b": [["8", "8", "16", "13", "16", "16", "21", "21", "25", "25", "29", "29", "32"]],
    "1c": [["16", "16", "32", "43", "43", "57", "57", "79", "90", "102", "121", "127"]],
    "1d": [["32", "32", "64", "86", "86", "114", "114", "158", "179", "203", "241"]],
    "2a": [["9", "8", "8", "8", "7", "8", "8"]],
    "2b": [["27", "13", "16", "12", "14", "13", "13"]],
    "2d": [["9", "11", "10", "9"]],
}


class TestTables:
    @pytest.mark.parametrize("table_id", sorted(EXPECTED_BOUND_COLUMNS))
    def test_bound_columns(self, capsys, monkeypatch, table_id):
        _no_oracle(monkeypatch)
        code, out, _ = run(capsys, "table", table_id)
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0][0] == "graph" and rows[0][-1].startswith("chi_")
        assert [r[1] for r in rows[1:]] == EXPECTED_BOUND_COLUMNS[table_id][0]

    def test_ngo_columns(self, capsys, monkeypatch):
        _no_oracle(monkeypatch)
        rows = list(csv.reader(io.StringIO(run(capsys, "table", "1c")[1])))
        ngo = dict((r[0], r[2]) for r in rows[1:])
        assert ngo["Q9"] == "52"
        rows = list(csv.reader(io.StringIO(run(capsys, "table", "1d")[1])))
        assert dict((r[0], r[2]) for r in rows[1:])["Q10"] == "103"

    def test_2c(self, capsys, monkeypatch):
        _no_oracle(monkeypatch)
        rows = list(csv.reader(io.StringIO(run(capsys, "table", "2c", "--budget", "10")[1])))
        # the exact LP finishes G(3,9) well inside the budget
        assert [r[1] for r in rows[1:]] == ["degenerate", "32", "32", "27", "27", "25", "25"]
        best = {r[0]: (r[2], r[3]) for r in rows[1:]}
        assert best["G(3,7)"][0] == "35" and best["G(3,7)"][1].startswith("external:")
        assert best["G(3,3)"] == ("N/A", "")

    def test_lp_budget_cell(self):
        assert cli.bound_cell(cli.GraphSpec.parse("lee:3:9"), 4, "lp_minor", -1) == "time"

    def test_byte_stable(self):
        cmd = [sys.executable, "-m", "distchrom", "table", "2d", "--budget", "1"]
        first = subprocess.run(cmd, capture_output=True, check=True).stdout
        second = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert first == second
        assert first.decode().splitlines()[1].startswith('"G(4,3)",9,')

    def test_cells_match_single_commands(self, capsys):
        code, out, _ = run(capsys, "table", "2a", "--budget", "3")
        rows = list(csv.reader(io.StringIO(out)))
        for row in rows[1:]:
            q = row[0][len("G(3,"):-1]
            spec = f"lee:3:{q}"
            assert str(run_json(capsys, "bound", spec, "--t", "2", "--method", "closed_t2_regular")["value"]) == row[1]
            if row[-1] != "time":
                single = run_json(capsys, "oracle", spec, "--t", "2", "chi", "--budget", "30")
                assert str(single["value"]) == row[-1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "distchrom", "lee", "wprime", "3", "7"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["member"] is True


def test_unknown_method_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["bound", "qn:4", "--t", "2", "--method", "magic"])
    assert info.value.code == 2
