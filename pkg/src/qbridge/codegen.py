"""Target-dialect dispatch: emit a Circuit as text, and the full convert
pipeline (parse, expand, decompose, emit) used by the CLI and the service.

Emission is deterministic: equal circuits produce byte-identical text.
"""
from __future__ import annotations

from .decompose import decompose_for
from .errors import QbridgeError, UnknownDialect, tag_stage
from .frontends import parse
from .ir import Circuit, expand_macros
from .dialects.frameworks import emit_cirq, emit_pyquil, emit_qiskit
from .dialects.ionq import emit_ionq
from .dialects.openqasm import emit_qasm
from .dialects.qcjson import emit_qcjson
from .dialects.quil import emit_quil
from .dialects.quirk import emit_quirk

TARGET_DIALECTS = (
    "openqasm2",
    "quil2",
    "ionq-json",
    "quantum-circuit-json",
    "quirk-json",
    "qiskit-src",
    "cirq-src",
    "pyquil-src",
)

_EMITTERS = {
    "openqasm2": emit_qasm,
    "quil2": emit_quil,
    "ionq-json": emit_ionq,
    "quantum-circuit-json": emit_qcjson,
    "quirk-json": emit_quirk,
    "qiskit-src": emit_qiskit,
    "cirq-src": emit_cirq,
    "pyquil-src": emit_pyquil,
}


def emit(circuit: Circuit, target: str) -> str:
    if target not in _EMITTERS:
        raise UnknownDialect(f"unknown target dialect {target!r}")
    return _EMITTERS[target](circuit)


def convert(source_dialect: str, target: str, source: str) -> str:
    """The single conversion pipeline: parse, expand, decompose, emit."""
    try:
        circuit = parse(source_dialect, source)
    except QbridgeError as e:
        raise tag_stage(e, "parse")
    try:
        circuit = expand_macros(circuit)
    except QbridgeError as e:
        raise tag_stage(e, "expand")
    try:
        circuit = decompose_for(circuit, target)
    except QbridgeError as e:
        raise tag_stage(e, "decompose")
    try:
        return emit(circuit, target)
    except QbridgeError as e:
        raise tag_stage(e, "emit")
