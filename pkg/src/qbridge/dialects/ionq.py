"""IonQ circuit JSON frontend and emitter.

Object form ``{"qubits": n, "circuit": [{"gate": ..., "target(s)": ...,
"control(s)": ..., "rotation": ...}]}``. Vendor aliases are accepted on input
("cnot" = "cx", "not" = "x", "si"/"ti"/"v" for the dagger/root gates). The
format has no measurement instructions (hardware measures every qubit at the
end), so emitting an explicitly measured circuit is an error rather than a
silent reinterpretation.
"""
from __future__ import annotations

import json

from ..errors import SemanticError, UnsupportedConstruct, UnsupportedForTarget
from ..gates import STANDARD_GATES
from ..ir import Barrier, Circuit, Conditional, Gate, Measure, Op, Reset
from .jsonutil import load_json_object

_ALIASES = {
    "cnot": "cx",
    "not": "x",
    "si": "sdg",
    "ti": "tdg",
    "v": "sx",
}

#: single-qubit names accepted without controls
_PLAIN = {"x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "rx", "ry", "rz"}
_ROTATIONS = {"rx", "ry", "rz"}
#: (base gate, n controls) -> IR name
_CONTROLLED = {
    ("x", 1): "cx",
    ("x", 2): "ccx",
    ("y", 1): "cy",
    ("z", 1): "cz",
    ("h", 1): "ch",
    ("rz", 1): "crz",
    ("swap", 1): "cswap",
}

#: gates the emitter writes natively; the rest decompose first
NATIVE = frozenset(
    {"x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "rx", "ry", "rz", "cx", "swap"}
)


def _int_list(value, what: str) -> list[int]:
    if isinstance(value, int) and not isinstance(value, bool):
        return [value]
    if isinstance(value, list) and all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        return list(value)
    raise SemanticError(f"{what} must be an integer or list of integers",
                        line=1, column=1, dialect="ionq-json")


def parse_ionq(source: str) -> Circuit:
    obj = load_json_object(source, "ionq-json")
    for key in ("qubits", "circuit"):
        if key not in obj:
            raise SemanticError(f"missing field {key!r}", line=1, column=1,
                                dialect="ionq-json")
    n = obj["qubits"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise SemanticError("'qubits' must be a non-negative integer",
                            line=1, column=1, dialect="ionq-json")
    entries = obj["circuit"]
    if not isinstance(entries, list):
        raise SemanticError("'circuit' must be a list", line=1, column=1,
                            dialect="ionq-json")

    ops: list[Op] = []
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict) or "gate" not in entry:
            raise SemanticError(f"circuit[{k}] must be an object with a 'gate' field",
                                line=1, column=1, dialect="ionq-json")
        raw_name = entry["gate"]
        if not isinstance(raw_name, str):
            raise SemanticError(f"circuit[{k}].gate must be a string",
                                line=1, column=1, dialect="ionq-json")
        name = _ALIASES.get(raw_name.lower(), raw_name.lower())

        targets: list[int] = []
        if "target" in entry or "targets" in entry:
            targets = _int_list(
                entry.get("target", entry.get("targets")), f"circuit[{k}] target"
            )
        controls: list[int] = []
        if "control" in entry or "controls" in entry:
            controls = _int_list(
                entry.get("control", entry.get("controls")), f"circuit[{k}] control"
            )

        if name == "cx" and not controls and len(targets) == 2:
            controls, targets = targets[:1], targets[1:]
        if name in ("cx", "ccx", "cz", "cy", "ch", "crz"):
            # explicit controlled spellings reduce to base + controls
            base = {"cx": "x", "ccx": "x", "cz": "z", "cy": "y", "ch": "h", "crz": "rz"}[name]
            controls = controls or []
            if name == "ccx" and len(controls) < 2:
                controls = controls + targets[:-1]
                targets = targets[-1:]
            name = base

        if name == "swap":
            if controls:
                ir_name = _CONTROLLED.get(("swap", len(controls)))
                if ir_name is None:
                    raise UnsupportedConstruct(
                        f"swap with {len(controls)} controls",
                        line=1, column=1, dialect="ionq-json",
                    )
                qubits = controls + targets
            else:
                ir_name, qubits = "swap", targets
            if len(targets) != 2:
                raise SemanticError(f"circuit[{k}]: swap needs two targets",
                                    line=1, column=1, dialect="ionq-json")
        elif name in _PLAIN:
            if len(targets) != 1:
                raise SemanticError(f"circuit[{k}]: gate {raw_name!r} needs one target",
                                    line=1, column=1, dialect="ionq-json")
            if controls:
                ir_name = _CONTROLLED.get((name, len(controls)))
                if ir_name is None:
                    raise UnsupportedConstruct(
                        f"{raw_name} with {len(controls)} controls",
                        line=1, column=1, dialect="ionq-json",
                    )
                qubits = controls + targets
            else:
                ir_name, qubits = name, targets
        else:
            raise UnsupportedConstruct(
                f"gate {raw_name!r}", line=1, column=1, dialect="ionq-json"
            )

        params: tuple = ()
        base_def = STANDARD_GATES[ir_name]
        if base_def.num_params:
            if "rotation" not in entry or not isinstance(entry["rotation"], (int, float)):
                raise SemanticError(
                    f"circuit[{k}]: gate {raw_name!r} needs a numeric 'rotation'",
                    line=1, column=1, dialect="ionq-json",
                )
            params = (float(entry["rotation"]),)

        for q in qubits:
            if not 0 <= q < n:
                raise SemanticError(
                    f"circuit[{k}]: qubit {q} out of range for {n}-qubit circuit",
                    line=1, column=1, dialect="ionq-json",
                )
        if len(set(qubits)) != len(qubits):
            raise SemanticError(f"circuit[{k}]: duplicate qubit operand",
                                line=1, column=1, dialect="ionq-json")
        ops.append(Gate(ir_name, params, tuple(qubits)))

    return Circuit(num_qubits=n, ops=tuple(ops), name="main")


def emit_ionq(circuit: Circuit) -> str:
    entries = []
    for op in circuit.ops:
        if isinstance(op, Barrier):
            continue
        if isinstance(op, Measure):
            raise UnsupportedForTarget("measure", "ionq-json")
        if isinstance(op, Reset):
            raise UnsupportedForTarget("reset", "ionq-json")
        if isinstance(op, Conditional):
            raise UnsupportedForTarget("conditional", "ionq-json")
        assert isinstance(op, Gate)
        if op.name not in NATIVE:
            raise UnsupportedForTarget(f"gate {op.name}", "ionq-json")
        if op.name == "cx":
            entries.append(
                {"gate": "cnot", "control": op.qubits[0], "target": op.qubits[1]}
            )
        elif op.name == "swap":
            entries.append({"gate": "swap", "targets": list(op.qubits)})
        elif op.name in _ROTATIONS:
            entries.append(
                {"gate": op.name, "rotation": float(op.params[0]), "target": op.qubits[0]}
            )
        else:
            wire_name = {"sdg": "si", "tdg": "ti", "sx": "v"}.get(op.name, op.name)
            entries.append({"gate": wire_name, "target": op.qubits[0]})
    payload = {"qubits": circuit.num_qubits, "circuit": entries}
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)
