"""Quirk circuit JSON frontend and emitter (computational subset).

Quirk documents are ``{"cols": [...]}`` where each column is a list of cells
top to bottom: the integer 1 is an empty slot, plain strings name gates.
Supported cells: H, X, Y, Z, S ("Z^½"), T ("Z^¼"), their inverses, Measure,
Swap and the control dot "•". A control in a column must pair with exactly
one X (cx), one Z (cz), two controls with X (ccx), or a Swap pair (cswap).
Display, custom and parameterized Quirk gates are out of scope.
"""
from __future__ import annotations

import json

from ..errors import SemanticError, UnsupportedConstruct, UnsupportedForTarget
from ..ir import Barrier, Circuit, Conditional, Gate, Measure, Op, Reset
from ..ir import moments as _moments
from .jsonutil import load_json_object, schema_error

DIALECT = "quirk-json"

_PLAIN_CELLS = {
    "H": "h",
    "X": "x",
    "Y": "y",
    "Z": "z",
    "S": "s",
    "Z^½": "s",
    "Z^1/2": "s",
    "T": "t",
    "Z^¼": "t",
    "Z^1/4": "t",
    "Z^-½": "sdg",
    "Z^-1/2": "sdg",
    "Z^-¼": "tdg",
    "Z^-1/4": "tdg",
}
_EMIT_CELLS = {
    "h": "H",
    "x": "X",
    "y": "Y",
    "z": "Z",
    "s": "S",
    "t": "T",
    "sdg": "Z^-½",
    "tdg": "Z^-¼",
}
#: gates representable at all (directly or as control patterns)
NATIVE = frozenset(_EMIT_CELLS) | {"cx", "cz", "ccx", "swap", "cswap", "id"}


def parse_quirk(source: str) -> Circuit:
    obj = load_json_object(source, DIALECT)
    if "cols" not in obj:
        raise schema_error(DIALECT, "document needs a 'cols' field")
    if "gates" in obj:
        raise UnsupportedConstruct(
            "custom gates", line=1, column=1, dialect=DIALECT
        )
    if "init" in obj:
        raise UnsupportedConstruct(
            "custom initial states", line=1, column=1, dialect=DIALECT
        )
    cols = obj["cols"]
    if not isinstance(cols, list) or not all(isinstance(c, list) for c in cols):
        raise schema_error(DIALECT, "'cols' must be a list of columns")

    n = max((len(c) for c in cols), default=0)
    ops: list[Op] = []
    any_measure = any("Measure" in col for col in cols)
    for ci, col in enumerate(cols):
        controls: list[int] = []
        xs: list[int] = []
        zs: list[int] = []
        swaps: list[int] = []
        singles: list[tuple[int, str]] = []
        measures: list[int] = []
        for wire, cell in enumerate(col):
            if cell == 1:
                continue
            if not isinstance(cell, str):
                raise UnsupportedConstruct(
                    f"cell {cell!r}", line=1, column=1, dialect=DIALECT
                )
            if cell == "•":
                controls.append(wire)
            elif cell == "X":
                xs.append(wire)
            elif cell == "Z":
                zs.append(wire)
            elif cell == "Swap":
                swaps.append(wire)
            elif cell == "Measure":
                measures.append(wire)
            elif cell in _PLAIN_CELLS:
                singles.append((wire, _PLAIN_CELLS[cell]))
            else:
                raise UnsupportedConstruct(
                    f"Quirk gate {cell!r}", line=1, column=1, dialect=DIALECT
                )
        if controls:
            if measures or singles:
                raise UnsupportedConstruct(
                    f"column {ci}: controls may pair only with X, Z or Swap",
                    line=1, column=1, dialect=DIALECT,
                )
            if len(controls) == 1 and len(xs) == 1 and not zs and not swaps:
                ops.append(Gate("cx", (), (controls[0], xs[0])))
            elif len(controls) == 1 and len(zs) == 1 and not xs and not swaps:
                ops.append(Gate("cz", (), (controls[0], zs[0])))
            elif len(controls) == 2 and len(xs) == 1 and not zs and not swaps:
                ops.append(Gate("ccx", (), (*controls, xs[0])))
            elif len(controls) == 1 and len(swaps) == 2 and not xs and not zs:
                ops.append(Gate("cswap", (), (controls[0], *swaps)))
            else:
                raise UnsupportedConstruct(
                    f"column {ci}: unsupported control pattern",
                    line=1, column=1, dialect=DIALECT,
                )
        else:
            if swaps:
                if len(swaps) != 2:
                    raise SemanticError(
                        f"column {ci}: Swap cells must come in pairs",
                        line=1, column=1, dialect=DIALECT,
                    )
                ops.append(Gate("swap", (), tuple(swaps)))
            cells = sorted(
                [(w, ("gate", g)) for w, g in singles]
                + [(w, ("x", None)) for w in xs]
                + [(w, ("z", None)) for w in zs]
                + [(w, ("measure", None)) for w in measures]
            )
            for wire, (kind, gate_name) in cells:
                if kind == "measure":
                    ops.append(Measure(wire, "c", wire))
                elif kind == "gate":
                    ops.append(Gate(gate_name, (), (wire,)))
                else:
                    ops.append(Gate(kind, (), (wire,)))
    cregs = (("c", n),) if any_measure else ()
    return Circuit(num_qubits=n, ops=tuple(ops), cregs=cregs, name="main")


def emit_quirk(circuit: Circuit) -> str:
    n = circuit.num_qubits
    stripped = Circuit(
        num_qubits=n,
        ops=tuple(op for op in circuit.ops if not isinstance(op, Barrier)),
        qregs=circuit.qregs,
        cregs=circuit.cregs,
        name=circuit.name,
    )
    cols: list[list] = []
    for col in _moments(stripped):
        # a Quirk control acts on its whole column, so each controlled gate
        # gets an exclusive column; uncontrolled cells share one
        plain: list = [1] * n
        controlled_cols: list[list] = []
        for i in col:
            op = stripped.ops[i]
            if isinstance(op, Conditional):
                raise UnsupportedForTarget("conditional", DIALECT)
            if isinstance(op, Reset):
                raise UnsupportedForTarget("reset", DIALECT)
            if isinstance(op, Measure):
                plain[op.qubit] = "Measure"
                continue
            assert isinstance(op, Gate)
            if op.name == "id":
                continue
            if op.name not in NATIVE:
                raise UnsupportedForTarget(f"gate {op.name}", DIALECT)
            if op.name in ("cx", "cz", "ccx", "cswap", "swap"):
                cells: list = [1] * n
                if op.name == "cx":
                    cells[op.qubits[0]], cells[op.qubits[1]] = "•", "X"
                elif op.name == "cz":
                    cells[op.qubits[0]], cells[op.qubits[1]] = "•", "Z"
                elif op.name == "ccx":
                    a, b, t = op.qubits
                    cells[a], cells[b], cells[t] = "•", "•", "X"
                elif op.name == "swap":
                    a, b = op.qubits
                    cells[a] = cells[b] = "Swap"
                else:
                    c, a, b = op.qubits
                    cells[c], cells[a], cells[b] = "•", "Swap", "Swap"
                controlled_cols.append(cells)
            else:
                plain[op.qubits[0]] = _EMIT_CELLS[op.name]
        if any(cell != 1 for cell in plain):
            cols.append(plain)
        cols.extend(controlled_cols)
    return json.dumps({"cols": cols}, ensure_ascii=False, separators=(",", ":"), sort_keys=True)
