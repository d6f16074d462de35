"""CLI exit codes, stream separation, and subcommand behavior."""
import json

import pytest

from qbridge.cli import main

BELL = (
    'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncreg c[2];\n'
    "h q[0];\ncx q[0],q[1];\nmeasure q -> c;\n"
)


@pytest.fixture
def bell_file(tmp_path):
    path = tmp_path / "bell.qasm"
    path.write_text(BELL)
    return path


def test_run_plain(bell_file, capsys):
    assert main(["run", str(bell_file)]) == 0
    out = capsys.readouterr()
    assert out.out == "00  0.500000\n11  0.500000\n"
    assert out.err == ""


def test_run_json(bell_file, capsys):
    assert main(["run", str(bell_file), "--json", "--shots", "32", "--seed", "7"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["seed"] == 7
    assert sum(payload["shots"].values()) == 32


def test_run_snapshots(bell_file, capsys):
    assert main(["run", str(bell_file), "--json", "--snapshots"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["snapshots"]) == 3


def test_run_explicit_dialect(tmp_path, capsys):
    quil = tmp_path / "bell.no_ext"
    quil.write_text("DECLARE ro BIT[1]\nH 0\nMEASURE 0 ro[0]\n")
    assert main(["run", str(quil), "--dialect", "quil2"]) == 0
    assert "0  0.500000" in capsys.readouterr().out


def test_run_parse_error_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.qasm"
    bad.write_text("OPENQASM 2.0;\nqreg q[1;\n")
    assert main(["run", str(bad)]) == 1
    out = capsys.readouterr()
    assert out.out == ""
    assert "parse error at line 2" in out.err
    assert "qreg q[1;" in out.err


def test_run_missing_file_exit_1(capsys):
    assert main(["run", "nowhere.qasm"]) == 1
    assert "error" in capsys.readouterr().err


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["run"])
    assert exc.value.code == 2


def test_convert_to_stdout(bell_file, capsys):
    code = main(
        ["convert", str(bell_file), "--from", "openqasm2", "--to", "qiskit-src"]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "QuantumCircuit" in out


def test_convert_detects_source_dialect(bell_file, capsys):
    assert main(["convert", str(bell_file), "--to", "quil2"]) == 0
    assert "CNOT 0 1" in capsys.readouterr().out


def test_convert_output_file(bell_file, tmp_path, capsys):
    out_path = tmp_path / "bell.quil"
    code = main(
        ["convert", str(bell_file), "--from", "openqasm2", "--to", "quil2",
         "-o", str(out_path)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    assert "CNOT 0 1" in out_path.read_text()


def test_convert_unsupported_exit_1(bell_file, capsys):
    code = main(
        ["convert", str(bell_file), "--from", "openqasm2", "--to", "ionq-json"]
    )
    assert code == 1
    assert "emit error" in capsys.readouterr().err


def test_new_project(tmp_path, capsys):
    dest = tmp_path / "demo"
    assert main(["new", "qiskit-hello-world", str(dest)]) == 0
    listed = capsys.readouterr().out.strip().splitlines()
    assert str(dest / "bell.qasm") in listed
    assert (dest / "main.py").exists()


def test_new_with_vars(tmp_path, capsys):
    dest = tmp_path / "demo2"
    assert main(
        ["new", "qiskit-hello-world", str(dest), "--var", "author=ada"]
    ) == 0
    assert "author: ada" in (dest / "main.py").read_text()


def test_new_bad_var_exit_2(tmp_path, capsys):
    assert main(["new", "qiskit-hello-world", str(tmp_path / "x"),
                 "--var", "oops"]) == 2


def test_templates_list(capsys):
    assert main(["templates", "list"]) == 0
    out = capsys.readouterr().out
    assert "qiskit-hello-world" in out and "built-in" in out


def test_templates_save_and_reuse(tmp_path, capsys):
    src = tmp_path / "proj"
    src.mkdir()
    (src / "a.qasm").write_text("OPENQASM 2.0;\n")
    troot = tmp_path / "templates"
    assert main(
        ["templates", "save", str(src), "mine", "--templates-dir", str(troot)]
    ) == 0
    capsys.readouterr()
    assert main(["templates", "list", "--templates-dir", str(troot)]) == 0
    assert "mine" in capsys.readouterr().out


def test_templates_save_needs_root(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("QBRIDGE_TEMPLATES_DIR", raising=False)
    src = tmp_path / "proj"
    src.mkdir()
    (src / "a").write_text("x")
    assert main(["templates", "save", str(src), "mine"]) == 2


def test_examples_list_and_show(capsys):
    assert main(["examples", "list"]) == 0
    assert "qft-2" in capsys.readouterr().out
    assert main(["examples", "show", "bell"]) == 0
    assert "OPENQASM 2.0;" in capsys.readouterr().out
    assert main(["examples", "show", "nope"]) == 1


def test_run_from_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(BELL))
    assert main(["run", "-"]) == 0
    assert "00  0.500000" in capsys.readouterr().out
