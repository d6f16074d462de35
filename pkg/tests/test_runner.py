"""Runner pipeline and report formatting."""
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbridge.codegen import emit
from qbridge.decompose import decompose_for
from qbridge.errors import ParseError, UnknownDialect
from qbridge.runner import run_report, run_source
from qbridge.simulator import RunOptions, simulate

from gen import COMMON_GATES, random_circuit
from oracles import linf

BELL_QASM = (
    'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncreg c[2];\n'
    "h q[0];\ncx q[0],q[1];\nmeasure q -> c;\n"
)
BELL_QUIL = "DECLARE ro BIT[2]\nH 0\nCNOT 0 1\nMEASURE 0 ro[0]\nMEASURE 1 ro[1]\n"


def test_run_qasm_autodetected():
    result = run_source(BELL_QASM)
    assert result.probabilities == pytest.approx({"00": 0.5, "11": 0.5}, abs=1e-12)


def test_run_quil_explicit_dialect():
    result = run_source(BELL_QUIL, "quil2")
    assert result.probabilities == pytest.approx({"00": 0.5, "11": 0.5}, abs=1e-12)


def test_macros_expanded_before_simulation():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "gate bell a,b { h a; cx a,b; }\n"
        "qreg q[2];\ncreg c[2];\nbell q[0],q[1];\nmeasure q -> c;\n"
    )
    result = run_source(src)
    assert result.probabilities == pytest.approx({"00": 0.5, "11": 0.5}, abs=1e-12)


def test_parse_error_stage_and_snippet():
    with pytest.raises(ParseError) as exc:
        run_source("OPENQASM 2.0;\nqreg q[1;\n")
    assert exc.value.stage == "parse"
    assert exc.value.snippet == "qreg q[1;"
    assert exc.value.line == 2


def test_detect_error_stage():
    with pytest.raises(UnknownDialect) as exc:
        run_source("gibberish")
    assert exc.value.stage == "detect"


def test_report_plain_bell():
    result = run_source(BELL_QASM)
    assert run_report(result, "plain") == "00  0.500000\n11  0.500000\n"


def test_report_plain_sorted_desc_then_lex():
    result = run_source(
        BELL_QASM.replace("h q[0];", "ry(1.0471975511965976) q[0];")
    )  # P(1) = 0.25
    lines = run_report(result, "plain").strip().splitlines()
    assert lines[0].startswith("00")
    assert lines[1].startswith("11")


def test_report_full_state_fallback():
    result = run_source(
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nh q[0];\n'
    )
    report = run_report(result, "plain")
    assert report.startswith("no measurements; full-state distribution:\n")
    assert "0  0.500000" in report


def test_report_shots_section():
    result = run_source(BELL_QASM, options=RunOptions(shots=64, seed=1))
    report = run_report(result, "plain")
    assert "shots (64):" in report


def test_report_json_round_trips():
    result = run_source(BELL_QASM, options=RunOptions(shots=16, seed=9))
    payload = json.loads(run_report(result, "json"))
    assert payload["probabilities"] == pytest.approx({"00": 0.5, "11": 0.5})
    assert sum(payload["shots"].values()) == 16
    assert payload["seed"] == 9


def test_report_unknown_format():
    with pytest.raises(ValueError):
        run_report(run_source(BELL_QASM), "yaml")


@given(st.integers(0, 10_000), st.sampled_from(["openqasm2", "quil2"]))
@settings(max_examples=30, deadline=None)
def test_emit_then_run_matches_direct_simulation(seed, dialect):
    circuit = random_circuit(seed, max_qubits=3, max_gates=8,
                             pool=COMMON_GATES, measure="all")
    text = emit(decompose_for(circuit, dialect), dialect)
    direct = simulate(circuit)
    via_text = run_source(text, dialect)
    assert linf(direct.probabilities, via_text.probabilities) <= 1e-9
