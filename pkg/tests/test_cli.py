"""Command-line interface: verdicts, exit codes, format equivalence."""

import json

from decomp_lab.cli import main
from decomp_lab.core import dumps_canonical
from decomp_lab.intlattice import matrix_to_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_check_steiner_exit_codes(capsys):
    code, out = run_cli(capsys, "check", "--kind", "steiner", "7", "3", "2", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] is True
    assert doc["command"] == "check"
    code, _ = run_cli(capsys, "check", "--kind", "steiner", "6", "3", "2", "1")
    assert code == 1


def test_solve_partite_triangles(capsys):
    code, out = run_cli(
        capsys, "solve", "--host", "k3n:4", "--partite", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "found"
    assert len(doc["certificate"]["copies"]) == 16


def test_count_latin_oracle_value(capsys):
    code, out = run_cli(capsys, "count", "--host", "k3n:3", "--partite")
    assert code == 0
    assert json.loads(out)["count"] == 12


def test_solve_proven_none_exit(capsys):
    code, out = run_cli(capsys, "solve", "--host", "k_n:5", "--pattern", "triangle")
    assert code == 1
    assert json.loads(out)["status"] == "none"


def test_check_digraph(capsys):
    code, _ = run_cli(
        capsys, "check", "--kind", "digraph",
        "--host", "kdn:2:4", "--pattern", "cycle:3:2",
    )
    assert code == 0


def test_text_and_json_verdicts_agree(capsys):
    code_j, out_j = run_cli(
        capsys, "check", "--kind", "steiner", "9", "3", "2", "1"
    )
    code_t, out_t = run_cli(
        capsys, "check", "--kind", "steiner", "9", "3", "2", "1",
        "--format", "text",
    )
    assert code_j == code_t == 0
    assert json.loads(out_j)["verdict"] is True
    assert "verdict: True" in out_t


def test_input_error_exit_code(capsys):
    code = main(["solve", "--host", "nonsense:3"])
    assert code == 3


def test_lattice_subcommand(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(dumps_canonical(matrix_to_json([[3, 3]])))
    code, out = run_cli(
        capsys, "lattice", "--matrix", str(path), "--vector", "36,36"
    )
    assert code == 0
    assert json.loads(out)["coefficients"] == [12]
    code, _ = run_cli(
        capsys, "lattice", "--matrix", str(path), "--vector", "1,0"
    )
    assert code == 1


def test_nibble_outputs_and_trajectory(tmp_path, capsys):
    out_path = tmp_path / "traj.jsonl"
    code, out = run_cli(
        capsys, "nibble", "--pattern", "triangle", "--blowup", "8",
        "--seed", "42", "--trajectory-out", str(out_path),
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["log_lower_estimate"] <= doc["log_upper"]
    assert doc["o_terms_dropped"] is True
    first = out_path.read_text()
    code2, _ = run_cli(
        capsys, "nibble", "--pattern", "triangle", "--blowup", "8",
        "--seed", "42", "--trajectory-out", str(out_path),
    )
    assert out_path.read_text() == first  # reproducible byte-for-byte


def test_encode_decode_roundtrip_via_files(tmp_path, capsys):
    grid = "0 1\n1 0\n"
    src = tmp_path / "latin.txt"
    src.write_text(grid)
    code, out = run_cli(capsys, "encode", "--kind", "latin", "--infile", str(src))
    assert code == 0
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(out)
    code2, out2 = run_cli(
        capsys, "decode", "--kind", "latin", "--infile", str(cert_path),
        "--order", "2",
    )
    assert code2 == 0
    assert out2.strip().splitlines() == ["0 1", "1 0"]


def test_typicality_cli(capsys):
    code, out = run_cli(
        capsys, "typicality", "--host", "k_n:10", "--c", "1/10", "--s", "1"
    )
    assert code == 0
    assert json.loads(out)["typical"] is True


def test_budget_env_var_limits_enumeration(monkeypatch, capsys):
    monkeypatch.setenv("DECOMP_LAB_BUDGET", "10")
    code = main(["solve", "--host", "k_n:9", "--pattern", "triangle"])
    assert code == 3  # budget exhaustion surfaces as an input-level error
    monkeypatch.delenv("DECOMP_LAB_BUDGET")
    code2 = main(["solve", "--host", "k_n:9", "--pattern", "triangle"])
    assert code2 == 0


def test_verify_cli_roundtrip(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    code, _ = run_cli(
        capsys, "solve", "--host", "k_n:7", "--pattern", "triangle",
        "--out", str(cert_path),
    )
    assert code == 0
    code2, out2 = run_cli(
        capsys, "verify", "--host", "k_n:7", "--pattern", "triangle",
        "--certificate", str(cert_path),
    )
    assert code2 == 0
    assert json.loads(out2)["valid"] is True


def test_check_master_cli(tmp_path, capsys):
    from decomp_lab.core import ColouredMultidigraph, Partition

    pattern = ColouredMultidigraph.from_colour_classes(
        3, 2, 2, [[(0, 1), (1, 2)], [(2, 0)]]
    )
    host = ColouredMultidigraph.from_colour_classes(
        3, 2, 2, [[(0, 1), (1, 2)], [(2, 0)]]
    )
    trivial3 = Partition.trivial(3)
    paths = {}
    for name, doc in [
        ("pattern", pattern.to_json_dict()),
        ("host", host.to_json_dict()),
        ("part", trivial3.to_json_dict()),
    ]:
        p = tmp_path / f"{name}.json"
        p.write_text(dumps_canonical(doc))
        paths[name] = str(p)
    code, out = run_cli(
        capsys, "check", "--kind", "master",
        "--host", "@" + paths["host"], "--pattern", "@" + paths["pattern"],
        "--host-partition", "@" + paths["part"],
        "--pattern-partition", "@" + paths["part"],
    )
    assert code == 0
    assert json.loads(out)["verdict"] is True
