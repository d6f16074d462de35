"""OpenQASM 2.0 frontend and emitter."""
import math

import pytest

from qbridge.errors import ParseError, SemanticError, UnsupportedConstruct
from qbridge.frontends import parse
from qbridge.ir import Barrier, Conditional, Gate, Measure, Reset, validate
from qbridge.dialects.openqasm import emit_qasm

from conftest import corpus_files

BELL = """\
OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
"""


def test_bell():
    c = parse("openqasm2", BELL)
    assert c.num_qubits == 2
    assert c.qregs == (("q", 2),)
    assert c.cregs == (("c", 2),)
    assert c.ops == (
        Gate("h", (), (0,)),
        Gate("cx", (), (0, 1)),
        Measure(0, "c", 0),
        Measure(1, "c", 1),
    )


def test_version_header_required():
    with pytest.raises(ParseError):
        parse("openqasm2", 'include "qelib1.inc";\nqreg q[1];\n')


def test_version_3_rejected():
    with pytest.raises(UnsupportedConstruct):
        parse("openqasm2", "OPENQASM 3.0;\nqreg q[1];\n")


def test_gates_need_the_include():
    src = "OPENQASM 2.0;\nqreg q[1];\nh q[0];\n"
    with pytest.raises(SemanticError, match="qelib1"):
        parse("openqasm2", src)


def test_builtin_u_cx_without_include():
    src = "OPENQASM 2.0;\nqreg q[2];\nU(0,0,0) q[0];\nCX q[0],q[1];\n"
    c = parse("openqasm2", src)
    assert [op.name for op in c.ops] == ["u3", "cx"]


def test_other_include_rejected():
    with pytest.raises(UnsupportedConstruct):
        parse("openqasm2", 'OPENQASM 2.0;\ninclude "other.inc";\n')


def test_constant_params_evaluated():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\n'
        "rx(pi/2) q[0];\nrz(2*sin(pi/6)) q[0];\n"
    )
    c = parse("openqasm2", src)
    assert c.ops[0].params[0] == pytest.approx(math.pi / 2, abs=1e-15)
    assert c.ops[1].params[0] == pytest.approx(1.0, abs=1e-12)


def test_macro_definition_and_expression_body():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "gate wiggle(theta) a { rz(theta/2) a; }\n"
        "qreg q[1];\nwiggle(pi) q[0];\n"
    )
    c = parse("openqasm2", src)
    assert "wiggle" in c.gate_defs
    body = c.gate_defs["wiggle"].body
    assert body.params == ("theta",)
    assert body.qubits == ("a",)
    assert c.ops == (Gate("wiggle", (math.pi,), (0,)),)


def test_register_broadcast():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[3];\nqreg r[3];\ncreg c[3];\n"
        "h q;\ncx q,r;\nmeasure r -> c;\n"
    )
    c = parse("openqasm2", src)
    assert c.num_qubits == 6
    names = [op.name for op in c.ops if isinstance(op, Gate)]
    assert names == ["h"] * 3 + ["cx"] * 3
    assert c.ops[3] == Gate("cx", (), (0, 3))
    assert c.ops[5] == Gate("cx", (), (2, 5))
    assert c.ops[-1] == Measure(5, "c", 2)


def test_broadcast_size_mismatch():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[2];\nqreg r[3];\ncx q,r;\n"
    )
    with pytest.raises(SemanticError, match="share one size"):
        parse("openqasm2", src)


def test_mixed_single_and_register_broadcast():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[1];\nqreg r[3];\ncx q[0],r;\n"
    )
    c = parse("openqasm2", src)
    assert [op.qubits for op in c.ops] == [(0, 1), (0, 2), (0, 3)]


def test_reset_and_barrier():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[2];\nreset q;\nbarrier q;\nbarrier q[0],q[1];\n"
    )
    c = parse("openqasm2", src)
    assert c.ops == (Reset(0), Reset(1), Barrier((0, 1)), Barrier((0, 1)))


def test_conditional():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[1];\ncreg c[2];\nif(c==3) x q[0];\n"
    )
    c = parse("openqasm2", src)
    assert c.ops == (Conditional("c", 3, Gate("x", (), (0,))),)


def test_conditional_measure_rejected():
    src = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "qreg q[1];\ncreg c[1];\nif(c==1) measure q[0] -> c[0];\n"
    )
    with pytest.raises(UnsupportedConstruct, match="may wrap a gate only"):
        parse("openqasm2", src)


def test_opaque_accepted_but_unusable():
    decl = (
        'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
        "opaque magic a,b;\nqreg q[2];\n"
    )
    c = parse("openqasm2", decl)
    assert c.gate_defs["magic"].opaque
    with pytest.raises(UnsupportedConstruct, match="opaque"):
        parse("openqasm2", decl + "magic q[0],q[1];\n")


def test_duplicate_operand_rejected():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncx q[0],q[0];\n'
    with pytest.raises(SemanticError, match="duplicate"):
        parse("openqasm2", src)


def test_undeclared_register():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nh ghost[0];\n'
    with pytest.raises(SemanticError, match="undeclared"):
        parse("openqasm2", src)


def test_index_out_of_range():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\nh q[5];\n'
    with pytest.raises(SemanticError, match="out of range"):
        parse("openqasm2", src)


def test_arity_and_param_errors():
    base = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\n'
    with pytest.raises(SemanticError, match="acts on"):
        parse("openqasm2", base + "cx q[0];\n")
    with pytest.raises(SemanticError, match="params"):
        parse("openqasm2", base + "rx q[0];\n")


def test_parse_error_position():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2;\n'
    with pytest.raises(ParseError) as exc:
        parse("openqasm2", src)
    assert exc.value.line == 3
    assert exc.value.column == 9
    assert exc.value.snippet == "qreg q[2;"


def test_unterminated_gate_body():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\ngate broken a { h a;\n'
    with pytest.raises(ParseError, match="unterminated"):
        parse("openqasm2", src)


def test_redeclaration_rejected():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nqreg q[2];\n'
    with pytest.raises(SemanticError, match="already declared"):
        parse("openqasm2", src)


def test_gate_redefinition_rejected():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\ngate h a { x a; }\n'
    with pytest.raises(SemanticError, match="already defined"):
        parse("openqasm2", src)


def test_reserved_word_as_name():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg pi[1];\n'
    with pytest.raises(SemanticError, match="reserved"):
        parse("openqasm2", src)


def test_uppercase_register_rejected():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg Q[1];\n'
    with pytest.raises(SemanticError, match="lowercase"):
        parse("openqasm2", src)


class TestEmit:
    def test_bell_round_trip(self):
        c = parse("openqasm2", BELL)
        text = emit_qasm(c)
        assert text.startswith('OPENQASM 2.0;\ninclude "qelib1.inc";\n')
        assert parse("openqasm2", text) == c

    def test_deterministic(self):
        c = parse("openqasm2", BELL)
        assert emit_qasm(c) == emit_qasm(c)

    def test_empty_circuit(self):
        from qbridge.ir import Circuit

        text = emit_qasm(Circuit(num_qubits=0))
        assert parse("openqasm2", text).num_qubits == 0

    @pytest.mark.parametrize(
        "path", corpus_files("openqasm2"), ids=lambda p: p.stem
    )
    def test_corpus_round_trip(self, path):
        first = parse("openqasm2", path.read_text())
        assert validate(first) == []
        text = emit_qasm(first)
        second = parse("openqasm2", text)
        assert second == first
        assert emit_qasm(second) == text
