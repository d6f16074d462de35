"""Source-dialect dispatch: parse any supported wire format into the IR."""
from __future__ import annotations

import json
import re

from .errors import ParseError, UnknownDialect
from .ir import Circuit
from .dialects.ionq import parse_ionq
from .dialects.openqasm import parse_qasm
from .dialects.qcjson import parse_qcjson
from .dialects.quil import GATE_NAMES as _QUIL_GATES
from .dialects.quil import parse_quil
from .dialects.quirk import parse_quirk

SOURCE_DIALECTS = (
    "openqasm2",
    "quil2",
    "ionq-json",
    "quantum-circuit-json",
    "quirk-json",
)

_PARSERS = {
    "openqasm2": parse_qasm,
    "quil2": parse_quil,
    "ionq-json": parse_ionq,
    "quantum-circuit-json": parse_qcjson,
    "quirk-json": parse_quirk,
}

_EXTENSIONS = {".qasm": "openqasm2", ".quil": "quil2"}

_QUIL_LINE = re.compile(
    r"^\s*(DECLARE|MEASURE|" + "|".join(sorted(_QUIL_GATES)) + r")(\(|\s|$)"
)


def parse(dialect: str, source: str) -> Circuit:
    if dialect not in _PARSERS:
        raise UnknownDialect(f"unknown source dialect {dialect!r}")
    try:
        return _PARSERS[dialect](source)
    except RecursionError:
        # robustness net for pathological nesting the guards did not cover
        raise ParseError(
            "input nesting too deep", line=1, column=1, dialect=dialect
        ) from None


def _sniff_json(obj) -> str | None:
    if not isinstance(obj, dict):
        return None
    if "cols" in obj:
        return "quirk-json"
    if "gates" in obj:
        return "quantum-circuit-json"
    if "circuit" in obj and "qubits" in obj:
        return "ionq-json"
    return None


def detect_dialect(source: str, filename_hint: str | None = None) -> str:
    """Deterministic detection: extension hints first, then content sniffing."""
    if filename_hint:
        lowered = filename_hint.lower()
        for ext, dialect in _EXTENSIONS.items():
            if lowered.endswith(ext):
                return dialect
        if lowered.endswith(".json"):
            try:
                obj = json.loads(source)
            except json.JSONDecodeError:
                raise UnknownDialect(
                    f"{filename_hint}: not valid JSON, cannot pick a JSON dialect"
                ) from None
            found = _sniff_json(obj)
            if found:
                return found
            raise UnknownDialect(
                f"{filename_hint}: JSON object matches no known circuit schema"
            )

    stripped = source.lstrip()
    if stripped.startswith("OPENQASM"):
        return "openqasm2"
    if stripped.startswith("{"):
        try:
            found = _sniff_json(json.loads(source))
        except json.JSONDecodeError:
            found = None
        if found:
            return found
    for line in source.splitlines():
        bare = line.split("#", 1)[0]
        if not bare.strip():
            continue
        if _QUIL_LINE.match(bare):
            return "quil2"
        break
    raise UnknownDialect("could not detect the source dialect; pass it explicitly")
