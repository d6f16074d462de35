"""Dialect-neutral circuit representation.

Every frontend produces a Circuit, every emitter consumes one, and the
simulator executes one. Qubits are flat global indices: multiple quantum
registers are flattened in declaration order (register structure is kept for
re-emission, the ops never reference it). Classical bits live in named
registers. Angles are radians, double precision.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from . import expr as _expr
from .errors import RecursionLimit, SemanticError, UnknownGate
from .gates import STANDARD_GATES, GateDef

MACRO_RECURSION_LIMIT = 256


@dataclass(frozen=True)
class Gate:
    """Application of a named gate. Inside macro bodies the qubit entries are
    formal-argument positions and params may be expression trees."""

    name: str
    params: tuple = ()
    qubits: tuple[int, ...] = ()


@dataclass(frozen=True)
class Measure:
    qubit: int
    creg: str
    bit: int


@dataclass(frozen=True)
class Reset:
    qubit: int


@dataclass(frozen=True)
class Barrier:
    qubits: tuple[int, ...]


@dataclass(frozen=True)
class Conditional:
    """Apply `gate` iff the named classical register equals `value`."""

    creg: str
    value: int
    gate: Gate


Op = Union[Gate, Measure, Reset, Barrier, Conditional]


@dataclass(frozen=True)
class MacroBody:
    """Body of a user-defined gate over formal parameter/qubit symbols."""

    params: tuple[str, ...]
    qubits: tuple[str, ...]
    ops: tuple[Op, ...]  # Gate/Barrier only; qubit entries index the formals


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple[Op, ...] = ()
    qregs: tuple[tuple[str, int], ...] | None = None
    cregs: tuple[tuple[str, int], ...] = ()
    gate_defs: dict[str, GateDef] = field(default_factory=dict)
    name: str = field(default="circuit", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "cregs", tuple(tuple(r) for r in self.cregs))
        if self.qregs is None:
            qregs = (("q", self.num_qubits),) if self.num_qubits else ()
        else:
            qregs = tuple(tuple(r) for r in self.qregs)
        object.__setattr__(self, "qregs", qregs)

    @property
    def creg_sizes(self) -> dict[str, int]:
        return dict(self.cregs)

    def creg_offset(self, name: str) -> int:
        off = 0
        for rname, size in self.cregs:
            if rname == name:
                return off
            off += size
        raise KeyError(name)

    @property
    def num_clbits(self) -> int:
        return sum(size for _, size in self.cregs)

    def resolve_gate(self, name: str) -> GateDef:
        if name in self.gate_defs:
            return self.gate_defs[name]
        if name in STANDARD_GATES:
            return STANDARD_GATES[name]
        raise UnknownGate(name)


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    op_index: int | None


def _resolve(circuit: Circuit, name: str) -> GateDef | None:
    if name in circuit.gate_defs:
        return circuit.gate_defs[name]
    return STANDARD_GATES.get(name)


def _check_gate(
    circuit: Circuit, gate: Gate, i: int | None, out: list[Diagnostic]
) -> None:
    gdef = _resolve(circuit, gate.name)
    if gdef is None:
        out.append(Diagnostic("UnknownGate", f"unknown gate {gate.name!r}", i))
        return
    if gdef.opaque:
        out.append(
            Diagnostic("OpaqueGate", f"opaque gate {gate.name!r} cannot be applied", i)
        )
        return
    if len(gate.params) != gdef.num_params:
        out.append(
            Diagnostic(
                "ParamCountMismatch",
                f"gate {gate.name!r} takes {gdef.num_params} params, "
                f"got {len(gate.params)}",
                i,
            )
        )
    if len(gate.qubits) != gdef.num_qubits:
        out.append(
            Diagnostic(
                "ArityMismatch",
                f"gate {gate.name!r} acts on {gdef.num_qubits} qubits, "
                f"got {len(gate.qubits)}",
                i,
            )
        )


def _check_qubits(
    circuit: Circuit, qubits: Iterable[int], i: int | None, out: list[Diagnostic]
) -> None:
    qubits = list(qubits)
    for q in qubits:
        if not 0 <= q < circuit.num_qubits:
            out.append(
                Diagnostic(
                    "QubitOutOfRange",
                    f"qubit {q} out of range for {circuit.num_qubits}-qubit circuit",
                    i,
                )
            )
    if len(set(qubits)) != len(qubits):
        out.append(Diagnostic("DuplicateOperand", "op references a qubit twice", i))


def validate(circuit: Circuit) -> list[Diagnostic]:
    """Check all Circuit invariants; violations are returned, never raised."""
    out: list[Diagnostic] = []
    cregs = circuit.creg_sizes

    if sum(size for _, size in circuit.qregs) != circuit.num_qubits:
        out.append(
            Diagnostic(
                "RegisterSizeMismatch",
                "sum of quantum register sizes does not equal num_qubits",
                None,
            )
        )
    seen_defs: set[str] = set()
    for name, gdef in circuit.gate_defs.items():
        if gdef.body is not None:
            for op in gdef.body.ops:
                if isinstance(op, Gate):
                    callee = op.name
                    known = callee in STANDARD_GATES or callee in seen_defs
                    if not known:
                        out.append(
                            Diagnostic(
                                "UnknownGate",
                                f"gate {name!r} calls {callee!r} which is not a "
                                "standard gate or previously defined macro",
                                None,
                            )
                        )
        seen_defs.add(name)

    for i, op in enumerate(circuit.ops):
        if isinstance(op, Gate):
            _check_gate(circuit, op, i, out)
            _check_qubits(circuit, op.qubits, i, out)
        elif isinstance(op, Measure):
            _check_qubits(circuit, [op.qubit], i, out)
            if op.creg not in cregs:
                out.append(
                    Diagnostic("UnknownCreg", f"undeclared register {op.creg!r}", i)
                )
            elif not 0 <= op.bit < cregs[op.creg]:
                out.append(
                    Diagnostic(
                        "BitOutOfRange",
                        f"bit {op.bit} out of range for {op.creg}[{cregs[op.creg]}]",
                        i,
                    )
                )
        elif isinstance(op, Reset):
            _check_qubits(circuit, [op.qubit], i, out)
        elif isinstance(op, Barrier):
            _check_qubits(circuit, op.qubits, i, out)
        elif isinstance(op, Conditional):
            if op.creg not in cregs:
                out.append(
                    Diagnostic("UnknownCreg", f"undeclared register {op.creg!r}", i)
                )
            if op.value < 0:
                out.append(
                    Diagnostic("NegativeComparison", "comparison value must be >= 0", i)
                )
            _check_gate(circuit, op.gate, i, out)
            _check_qubits(circuit, op.gate.qubits, i, out)
        else:  # pragma: no cover - defensive
            out.append(Diagnostic("UnknownOp", f"unknown op {op!r}", i))
    return out


def _eval_param(p, env: dict | None, context: str) -> float:
    try:
        return _expr.evaluate_strict(p, env)
    except _expr.ExpressionError as e:
        raise SemanticError(f"invalid parameter expression in {context}: {e}") from None


def _expand_gate(
    circuit: Circuit, gate: Gate, depth: int, out: list[Gate | Barrier]
) -> None:
    if depth > MACRO_RECURSION_LIMIT:
        raise RecursionLimit(MACRO_RECURSION_LIMIT)
    gdef = _resolve(circuit, gate.name)
    if gdef is None:
        raise UnknownGate(gate.name)
    if gdef.body is None:
        out.append(
            Gate(
                gate.name,
                tuple(_eval_param(p, None, gate.name) for p in gate.params),
                gate.qubits,
            )
        )
        return
    env = dict(
        zip(gdef.body.params, (_eval_param(p, None, gate.name) for p in gate.params))
    )
    for body_op in gdef.body.ops:
        if isinstance(body_op, Barrier):
            out.append(Barrier(tuple(gate.qubits[q] for q in body_op.qubits)))
            continue
        inner = Gate(
            body_op.name,
            tuple(_eval_param(p, env, gate.name) for p in body_op.params),
            tuple(gate.qubits[q] for q in body_op.qubits),
        )
        _expand_gate(circuit, inner, depth + 1, out)


def expand_macros(circuit: Circuit) -> Circuit:
    """Inline user-defined gates until only standard-table ops remain."""
    new_ops: list[Op] = []
    for op in circuit.ops:
        if isinstance(op, Gate):
            _expand_gate(circuit, op, 0, new_ops)
        elif isinstance(op, Conditional):
            expanded: list[Gate | Barrier] = []
            _expand_gate(circuit, op.gate, 0, expanded)
            for sub in expanded:
                if isinstance(sub, Barrier):
                    new_ops.append(sub)
                else:
                    new_ops.append(Conditional(op.creg, op.value, sub))
        else:
            new_ops.append(op)
    return Circuit(
        num_qubits=circuit.num_qubits,
        ops=tuple(new_ops),
        qregs=circuit.qregs,
        cregs=circuit.cregs,
        gate_defs={},
        name=circuit.name,
    )


def _wires(circuit: Circuit, op: Op) -> list:
    """Scheduling wires an op occupies: qubits plus touched classical bits."""
    if isinstance(op, Gate):
        return list(op.qubits)
    if isinstance(op, Measure):
        return [op.qubit, ("c", op.creg, op.bit)]
    if isinstance(op, Reset):
        return [op.qubit]
    if isinstance(op, Barrier):
        return list(op.qubits)
    if isinstance(op, Conditional):
        size = circuit.creg_sizes.get(op.creg, 0)
        return list(op.gate.qubits) + [("c", op.creg, b) for b in range(size)]
    raise TypeError(f"unknown op {op!r}")


def moments(circuit: Circuit) -> list[list[int]]:
    """Greedy left-packing of ops into columns of disjoint wires."""
    next_free: dict = {}
    cols: list[list[int]] = []
    for i, op in enumerate(circuit.ops):
        wires = _wires(circuit, op)
        col = max((next_free.get(w, 0) for w in wires), default=0)
        while len(cols) <= col:
            cols.append([])
        cols[col].append(i)
        for w in wires:
            next_free[w] = col + 1
    return cols


# --- canonical IR JSON (service and UI wire format) -------------------------

_OP_FIELDS = {
    "gate": ["kind", "name", "params", "qubits"],
    "measure": ["kind", "qubit", "creg", "bit"],
    "reset": ["kind", "qubit"],
    "barrier": ["kind", "qubits"],
    "conditional": ["kind", "creg", "value", "gate"],
}


def _op_to_json(op: Op) -> dict:
    if isinstance(op, Gate):
        return {
            "kind": "gate",
            "name": op.name,
            "params": [float(p) for p in op.params],
            "qubits": list(op.qubits),
        }
    if isinstance(op, Measure):
        return {"kind": "measure", "qubit": op.qubit, "creg": op.creg, "bit": op.bit}
    if isinstance(op, Reset):
        return {"kind": "reset", "qubit": op.qubit}
    if isinstance(op, Barrier):
        return {"kind": "barrier", "qubits": list(op.qubits)}
    if isinstance(op, Conditional):
        return {
            "kind": "conditional",
            "creg": op.creg,
            "value": op.value,
            "gate": _op_to_json(op.gate),
        }
    raise TypeError(f"unknown op {op!r}")


def circuit_to_json(circuit: Circuit) -> dict:
    """Serialize to the canonical IR JSON object (macros must be expanded)."""
    if circuit.gate_defs:
        raise ValueError("expand_macros before serializing to IR JSON")
    return {
        "name": circuit.name,
        "qubits": circuit.num_qubits,
        "cregs": [{"name": n, "size": s} for n, s in circuit.cregs],
        "ops": [_op_to_json(op) for op in circuit.ops],
    }


def _require(obj: dict, key: str, types, where: str):
    if key not in obj:
        raise SemanticError(f"missing field {key!r} in {where}")
    val = obj[key]
    if not isinstance(val, types) or isinstance(val, bool):
        raise SemanticError(f"field {key!r} in {where} has wrong type")
    return val


def _reject_unknown(obj: dict, allowed: Iterable[str], where: str):
    extra = set(obj) - set(allowed)
    if extra:
        raise SemanticError(f"unknown field {sorted(extra)[0]!r} in {where}")


def _op_from_json(obj, where: str) -> Op:
    if not isinstance(obj, dict):
        raise SemanticError(f"{where} must be an object")
    kind = _require(obj, "kind", str, where)
    if kind not in _OP_FIELDS:
        raise SemanticError(f"unknown op kind {kind!r} in {where}")
    _reject_unknown(obj, _OP_FIELDS[kind], where)
    if kind == "gate":
        name = _require(obj, "name", str, where)
        params = _require(obj, "params", list, where)
        qubits = _require(obj, "qubits", list, where)
        if not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in params):
            raise SemanticError(f"params in {where} must be numbers")
        if not all(isinstance(q, int) and not isinstance(q, bool) for q in qubits):
            raise SemanticError(f"qubits in {where} must be integers")
        return Gate(name, tuple(float(p) for p in params), tuple(qubits))
    if kind == "measure":
        return Measure(
            _require(obj, "qubit", int, where),
            _require(obj, "creg", str, where),
            _require(obj, "bit", int, where),
        )
    if kind == "reset":
        return Reset(_require(obj, "qubit", int, where))
    if kind == "barrier":
        qubits = _require(obj, "qubits", list, where)
        if not all(isinstance(q, int) and not isinstance(q, bool) for q in qubits):
            raise SemanticError(f"qubits in {where} must be integers")
        return Barrier(tuple(qubits))
    gate = _op_from_json(_require(obj, "gate", dict, where), f"{where}.gate")
    if not isinstance(gate, Gate):
        raise SemanticError(f"conditional in {where} must wrap a gate")
    return Conditional(
        _require(obj, "creg", str, where), _require(obj, "value", int, where), gate
    )


def circuit_from_json(obj) -> Circuit:
    """Parse the canonical IR JSON object; unknown fields are rejected."""
    if not isinstance(obj, dict):
        raise SemanticError("IR must be a JSON object")
    _reject_unknown(obj, ["name", "qubits", "cregs", "ops"], "circuit")
    name = obj.get("name", "circuit")
    if not isinstance(name, str):
        raise SemanticError("field 'name' in circuit has wrong type")
    num_qubits = _require(obj, "qubits", int, "circuit")
    if num_qubits < 0:
        raise SemanticError("'qubits' must be >= 0")
    cregs = []
    for k, entry in enumerate(obj.get("cregs", [])):
        if not isinstance(entry, dict):
            raise SemanticError(f"cregs[{k}] must be an object")
        _reject_unknown(entry, ["name", "size"], f"cregs[{k}]")
        cregs.append(
            (
                _require(entry, "name", str, f"cregs[{k}]"),
                _require(entry, "size", int, f"cregs[{k}]"),
            )
        )
    ops_json = obj.get("ops", [])
    if not isinstance(ops_json, list):
        raise SemanticError("field 'ops' in circuit has wrong type")
    ops = tuple(_op_from_json(o, f"ops[{k}]") for k, o in enumerate(ops_json))
    circuit = Circuit(
        num_qubits=num_qubits, ops=ops, cregs=tuple(cregs), name=name
    )
    diags = validate(circuit)
    if diags:
        raise SemanticError(f"invalid circuit: {diags[0].message}")
    return circuit
