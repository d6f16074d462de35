"""Quil 2.0 subset frontend and emitter."""
import math

import pytest

from qbridge.errors import ParseError, SemanticError, UnsupportedConstruct
from qbridge.frontends import parse
from qbridge.ir import Gate, Measure, validate
from qbridge.dialects.quil import emit_quil

from conftest import corpus_files

BELL = "H 0\nCNOT 0 1\nDECLARE ro BIT[2]\nMEASURE 0 ro[0]\nMEASURE 1 ro[1]\n"


def test_bell():
    c = parse("quil2", BELL)
    assert c.num_qubits == 2
    assert c.cregs == (("ro", 2),)
    assert c.ops == (
        Gate("h", (), (0,)),
        Gate("cx", (), (0, 1)),
        Measure(0, "ro", 0),
        Measure(1, "ro", 1),
    )


def test_gate_name_mapping():
    src = "PHASE(0.5) 0\nCCNOT 0 1 2\nCSWAP 0 1 2\nCZ 0 1\nSWAP 0 1\n"
    c = parse("quil2", src)
    assert [op.name for op in c.ops] == ["p", "ccx", "cswap", "cz", "swap"]


def test_parameter_arithmetic():
    c = parse("quil2", "RX(pi/2+pi/4) 0\nRZ(-(pi/3)) 0\n")
    assert c.ops[0].params[0] == pytest.approx(3 * math.pi / 4, abs=1e-15)
    assert c.ops[1].params[0] == pytest.approx(-math.pi / 3, abs=1e-15)


def test_num_qubits_from_max_index():
    assert parse("quil2", "H 4\n").num_qubits == 5


def test_declare_without_size():
    assert parse("quil2", "DECLARE ro BIT\n").cregs == (("ro", 1),)


def test_control_flow_rejected():
    with pytest.raises(UnsupportedConstruct) as exc:
        parse("quil2", "H 0\nLABEL @start\nJUMP @start\n")
    assert exc.value.construct == "LABEL"
    assert exc.value.line == 2


@pytest.mark.parametrize(
    "line,construct",
    [
        ("DEFGATE FOO:", "DEFGATE"),
        ("RESET 0", "RESET"),
        ("PRAGMA whatever", "PRAGMA"),
        ("DAGGER H 0", "DAGGER"),
        ("MEASURE 0", "MEASURE without target"),
        ("DECLARE theta REAL[1]", "DECLARE REAL"),
        ("GOAT 0", "GOAT"),
    ],
)
def test_out_of_subset(line, construct):
    with pytest.raises(UnsupportedConstruct) as exc:
        parse("quil2", line + "\n")
    assert exc.value.construct == construct


def test_undeclared_region():
    with pytest.raises(SemanticError, match="undeclared"):
        parse("quil2", "H 0\nMEASURE 0 ro[0]\n")


def test_region_index_range():
    with pytest.raises(SemanticError, match="out of range"):
        parse("quil2", "DECLARE ro BIT[1]\nMEASURE 0 ro[4]\n")


def test_arity_errors():
    with pytest.raises(SemanticError, match="acts on"):
        parse("quil2", "CNOT 0\n")
    with pytest.raises(SemanticError, match="params"):
        parse("quil2", "RX 0\n")
    with pytest.raises(SemanticError, match="duplicate"):
        parse("quil2", "CNOT 1 1\n")


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse("quil2", "H 0\nRX(0.5 0\n")
    assert exc.value.line == 2
    assert exc.value.snippet == "RX(0.5 0"


def test_trailing_garbage():
    with pytest.raises(ParseError):
        parse("quil2", "H 0 extra\n")


class TestEmit:
    def test_bell(self):
        c = parse("quil2", BELL)
        text = emit_quil(c)
        assert text == (
            "DECLARE ro BIT[2]\nH 0\nCNOT 0 1\nMEASURE 0 ro[0]\nMEASURE 1 ro[1]\n"
        )

    def test_deterministic(self):
        c = parse("quil2", BELL)
        assert emit_quil(c) == emit_quil(c)

    @pytest.mark.parametrize("path", corpus_files("quil2"), ids=lambda p: p.stem)
    def test_corpus_round_trip(self, path):
        first = parse("quil2", path.read_text())
        assert validate(first) == []
        text = emit_quil(first)
        second = parse("quil2", text)
        assert second == first
        assert emit_quil(second) == text
