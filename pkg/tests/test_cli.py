import json
import subprocess
import sys

import pytest

from flowtrotter.cli import main
from flowtrotter.config import ConfigError, load_config, parse_lattice
from flowtrotter.serialize import circuit_from_json, circuit_to_dict, from_qasm

FIXTURE = __file__.replace("test_cli.py", "fixtures/corrupted_vc_2x2.json")


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compile_vc_line(capsys, tmp_path):
    code, out, _ = run(capsys, "compile", "--lattice", "4x4", "--encoding", "vc", "--out", str(tmp_path))
    assert code == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["cx_depth"] == 16
    assert json.loads(out)["cx_depth"] == 16
    circuit_from_json((tmp_path / "circuit.json").read_text())


def test_compile_petal_baseline(capsys):
    code, out, _ = run(capsys, "compile", "--lattice", "4x4", "--encoding", "vc", "--strategy", "petal-baseline")
    assert code == 0 and json.loads(out)["cx_depth"] == 40


def test_compile_kw_west_depth_zero(capsys):
    code, out, _ = run(capsys, "compile", "--lattice", "8", "--encoding", "kw")
    sets = {f["label"]: f for f in json.loads(out)["flow_sets"]}
    assert code == 0 and sets["WE"]["cx_depth"] == 0


def test_compile_gse_native_depth(capsys):
    code, out, _ = run(capsys, "compile", "--lattice", "4x4", "--encoding", "gse", "--depth-mode", "native")
    rep = json.loads(out)
    assert code == 0 and rep["cx_depth"] == 16 and rep["swap_layers"] == 2 and rep["depth"] == 18


def test_compile_dk_line_is_config_error(capsys):
    code, _, err = run(capsys, "compile", "--lattice", "4x4", "--bc", "periodic", "--encoding", "dk",
                       "--strategy", "line")
    assert code == 2
    assert "overlapping supports" in err and "f(" in err


def test_qasm_output_roundtrips_to_json(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "compile", "--lattice", "2x2", "--encoding", "vc", "--format", "qasm", "--out", str(a))
    run(capsys, "compile", "--lattice", "2x2", "--encoding", "vc", "--format", "json", "--out", str(b))
    q = from_qasm((a / "circuit.qasm").read_text())
    j = circuit_from_json((b / "circuit.json").read_text())
    assert circuit_to_dict(q) == circuit_to_dict(j)


def test_outputs_are_deterministic(capsys, tmp_path):
    for d in ("x", "y"):
        run(capsys, "compile", "--lattice", "4x4", "--encoding", "gse", "--format", "qasm",
            "--out", str(tmp_path / d))
    for name in ("circuit.qasm", "report.json"):
        assert (tmp_path / "x" / name).read_bytes() == (tmp_path / "y" / name).read_bytes()
    _, t1, _ = run(capsys, "bench")
    _, t2, _ = run(capsys, "bench")
    assert t1 == t2


def test_verify_all_algebra(capsys):
    code, out, _ = run(capsys, "verify", "--lattice", "4x4", "--encoding", "all")
    assert code == 0
    assert out.count("PASS") >= 9 and "FAIL" not in out


def test_verify_dense_vc(capsys, tmp_path):
    code, _, _ = run(capsys, "verify", "--lattice", "2x2", "--encoding", "vc", "--verify", "dense",
                     "--out", str(tmp_path))
    rep = json.loads((tmp_path / "verify.json").read_text())
    assert code == 0
    rows = rep["results"][0]["dense"]["flow_set_exactness"]
    assert len(rows) == 4 and all(r["distance"] <= 1e-10 for r in rows)
    assert rep["results"][0]["dense"]["spectrum"]["ok"]


def test_verify_dense_cap(capsys):
    code, _, err = run(capsys, "verify", "--lattice", "4x4", "--encoding", "vc", "--verify", "dense")
    assert code == 2 and "capped" in err


def test_verify_corrupted_fixture(capsys):
    code, out, _ = run(capsys, "verify", "--encoding-file", FIXTURE)
    assert code == 1
    assert "FAIL" in out and "V1 vs T01" in out


def test_verify_tableau_dk(capsys):
    code, out, _ = run(capsys, "verify", "--lattice", "4x4", "--bc", "periodic", "--encoding", "dk",
                       "--verify", "tableau")
    assert code == 0 and "PASS DK" in out


def test_bench_table(capsys):
    code, out, _ = run(capsys, "bench", "--lattice", "4x4")
    assert code == 0
    lines = out.splitlines()
    vc = [l.split() for l in lines if l.startswith("VC ")]
    assert {r[2]: r[5] for r in vc} == {"line": "16", "petal-baseline": "40"}
    assert any(l.startswith("XYZ (VC, petal)") and " 44 " in l for l in lines)
    assert any(l.startswith("all-to-all connectivity") and " 6 " in l for l in lines)
    gse = next(l.split() for l in lines if l.startswith("GSE ") and " line " in l)
    assert gse[5:7] == ["16", "2"]


def test_bench_json(capsys):
    code, out, _ = run(capsys, "bench", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and any(r.get("strategy") == "literature" for r in rows)


def test_config_file_and_flag_precedence(capsys, tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[run]\nlattice = 6x6\nencoding = vc\ndt = 0.2\nsteps = 2\n")
    cfg = load_config(ini, {"lattice": "2x2"})
    assert cfg.lattice == "2x2" and cfg.dt == 0.2 and cfg.steps == 2
    code, out, _ = run(capsys, "compile", "--config", str(ini))
    rep = json.loads(out)
    assert code == 0 and rep["lattice"] == "6x6-open" and rep["steps"] == 2 and rep["cx_depth"] == 32


@pytest.mark.parametrize("args", [
    ["compile", "--lattice", "3y3"],
    ["compile", "--encoding", "nope"],
    ["compile", "--lattice", "3x3", "--bc", "periodic", "--encoding", "vc"],
    ["compile", "--encoding", "all"],
    ["compile", "--steps", "0"],
])
def test_config_errors_exit_2(capsys, args):
    code, _, err = run(capsys, *args)
    assert code == 2 and err.startswith("error:")


def test_config_file_errors(tmp_path):
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\nflavour = sour\n")
    with pytest.raises(ConfigError):
        load_config(bad)
    bad.write_text("[run]\ndt = fast\n")
    with pytest.raises(ConfigError):
        load_config(bad)
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.ini")


def test_parse_lattice():
    assert parse_lattice("4x3") == (4, 3)
    assert parse_lattice("8") == (8, 1)


def test_argparse_rejects_unknown_choice():
    with pytest.raises(SystemExit) as exc:
        main(["compile", "--format", "pdf"])
    assert exc.value.code == 2


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "flowtrotter.cli", "compile", "--lattice", "2x2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and '"cx_depth"' in res.stdout
