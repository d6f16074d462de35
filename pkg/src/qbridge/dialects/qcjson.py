"""quantum-circuit column JSON frontend and emitter.

Document shape::

    {"qubits": 3,
     "cregs": [{"name": "c", "size": 2}],
     "gates": [[{"name": "h", "wires": [0]},
                {"name": "rx", "wires": [1], "params": [1.5707]}],
               [{"name": "measure", "wires": [0], "creg": {"name": "c", "bit": 0}}]]}

``gates`` is a list of columns; cells within a column act on disjoint wires
and map to sequential ops top to bottom. Measurement cells name their target
classical bit, reset cells carry only wires.
"""
from __future__ import annotations

import json

from ..errors import UnsupportedForTarget
from ..gates import STANDARD_GATES
from ..ir import Barrier, Circuit, Conditional, Gate, Measure, Op, Reset
from ..ir import moments as _moments
from ..ir import validate as _validate
from .jsonutil import load_json_object, schema_error

DIALECT = "quantum-circuit-json"


def parse_qcjson(source: str) -> Circuit:
    obj = load_json_object(source, DIALECT)
    if "qubits" not in obj or "gates" not in obj:
        raise schema_error(DIALECT, "document needs 'qubits' and 'gates' fields")
    n = obj["qubits"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise schema_error(DIALECT, "'qubits' must be a non-negative integer")
    cregs: list[tuple[str, int]] = []
    for k, entry in enumerate(obj.get("cregs", [])):
        if (
            not isinstance(entry, dict)
            or not isinstance(entry.get("name"), str)
            or not isinstance(entry.get("size"), int)
        ):
            raise schema_error(DIALECT, f"cregs[{k}] must be {{name, size}}")
        cregs.append((entry["name"], entry["size"]))
    creg_sizes = dict(cregs)

    columns = obj["gates"]
    if not isinstance(columns, list):
        raise schema_error(DIALECT, "'gates' must be a list of columns")
    ops: list[Op] = []
    for ci, column in enumerate(columns):
        if not isinstance(column, list):
            raise schema_error(DIALECT, f"gates[{ci}] must be a list of cells")
        used: set[int] = set()
        cells = []
        for cell in column:
            if not isinstance(cell, dict) or not isinstance(cell.get("name"), str):
                raise schema_error(DIALECT, f"gates[{ci}] cell must have a 'name'")
            wires = cell.get("wires")
            if not isinstance(wires, list) or not all(
                isinstance(w, int) and not isinstance(w, bool) for w in wires
            ):
                raise schema_error(DIALECT, f"gates[{ci}] cell needs integer 'wires'")
            for w in wires:
                if not 0 <= w < n:
                    raise schema_error(
                        DIALECT, f"gates[{ci}]: wire {w} out of range for {n} qubits"
                    )
                if w in used:
                    raise schema_error(DIALECT, f"gates[{ci}]: wire {w} used twice")
                used.add(w)
            cells.append((min(wires) if wires else 0, cell))
        for _, cell in sorted(cells, key=lambda item: item[0]):
            ops.append(_cell_to_op(cell, ci, creg_sizes))
    circuit = Circuit(num_qubits=n, ops=tuple(ops), cregs=tuple(cregs), name="main")
    diags = _validate(circuit)
    if diags:
        raise schema_error(DIALECT, f"invalid circuit: {diags[0].message}")
    return circuit


def _cell_to_op(cell: dict, ci: int, creg_sizes: dict[str, int]) -> Op:
    name = cell["name"]
    wires = tuple(cell["wires"])
    if name == "measure":
        creg = cell.get("creg")
        if (
            not isinstance(creg, dict)
            or not isinstance(creg.get("name"), str)
            or not isinstance(creg.get("bit"), int)
        ):
            raise schema_error(DIALECT, f"gates[{ci}]: measure needs creg {{name, bit}}")
        if len(wires) != 1:
            raise schema_error(DIALECT, f"gates[{ci}]: measure takes one wire")
        if creg["name"] not in creg_sizes:
            raise schema_error(DIALECT, f"gates[{ci}]: undeclared creg {creg['name']!r}")
        if not 0 <= creg["bit"] < creg_sizes[creg["name"]]:
            raise schema_error(DIALECT, f"gates[{ci}]: creg bit out of range")
        return Measure(wires[0], creg["name"], creg["bit"])
    if name == "reset":
        if len(wires) != 1:
            raise schema_error(DIALECT, f"gates[{ci}]: reset takes one wire")
        return Reset(wires[0])
    gdef = STANDARD_GATES.get(name)
    if gdef is None:
        raise schema_error(DIALECT, f"gates[{ci}]: unknown gate {name!r}")
    params = cell.get("params", [])
    if not isinstance(params, list) or not all(
        isinstance(p, (int, float)) and not isinstance(p, bool) for p in params
    ):
        raise schema_error(DIALECT, f"gates[{ci}]: 'params' must be numbers")
    if len(params) != gdef.num_params:
        raise schema_error(
            DIALECT,
            f"gates[{ci}]: gate {name!r} takes {gdef.num_params} params, "
            f"got {len(params)}",
        )
    if len(wires) != gdef.num_qubits:
        raise schema_error(
            DIALECT,
            f"gates[{ci}]: gate {name!r} acts on {gdef.num_qubits} wires, "
            f"got {len(wires)}",
        )
    return Gate(name, tuple(float(p) for p in params), wires)


def emit_qcjson(circuit: Circuit) -> str:
    stripped = Circuit(
        num_qubits=circuit.num_qubits,
        ops=tuple(op for op in circuit.ops if not isinstance(op, Barrier)),
        qregs=circuit.qregs,
        cregs=circuit.cregs,
        name=circuit.name,
    )
    columns = []
    for col in _moments(stripped):
        cells = []
        for i in col:
            op = stripped.ops[i]
            if isinstance(op, Conditional):
                raise UnsupportedForTarget("conditional", DIALECT)
            if isinstance(op, Measure):
                cells.append(
                    {
                        "name": "measure",
                        "wires": [op.qubit],
                        "creg": {"name": op.creg, "bit": op.bit},
                    }
                )
            elif isinstance(op, Reset):
                cells.append({"name": "reset", "wires": [op.qubit]})
            else:
                assert isinstance(op, Gate)
                cell: dict = {"name": op.name, "wires": list(op.qubits)}
                if op.params:
                    cell["params"] = [float(p) for p in op.params]
                cells.append(cell)
        columns.append(sorted(cells, key=lambda c: min(c["wires"])))
    payload: dict = {"qubits": circuit.num_qubits, "gates": columns}
    if circuit.cregs:
        payload["cregs"] = [{"name": nm, "size": sz} for nm, sz in circuit.cregs]
    return json.dumps(payload, separators=(",", ":"), sort_keys=True)
