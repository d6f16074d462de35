"""Per-target gate decomposition.

Targets have unequal native sets; this pass rewrites a macro-expanded circuit
into target-native gates using a fixed rule table. Rules preserve measurement
distributions exactly; a few (phase/sx/u-chains) shift global phase, which is
unobservable. Rule outputs may themselves be non-native and are rewritten
recursively.
"""
from __future__ import annotations

import math

from .errors import UnknownDialect, UnsupportedForTarget
from .ir import Circuit, Conditional, Gate, Op

_FULL = frozenset(
    {
        "id", "x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx",
        "rx", "ry", "rz", "p", "u1", "u2", "u3",
        "cx", "cy", "cz", "ch", "swap", "crz", "cp", "ccx", "cswap",
    }
)

_QUIL = frozenset(
    {"h", "x", "y", "z", "s", "t", "rx", "ry", "rz", "p", "cx", "cz", "swap", "ccx", "cswap"}
)

#: gates each target can emit without rewriting
NATIVE_GATES: dict[str, frozenset[str]] = {
    "openqasm2": _FULL,
    "quantum-circuit-json": _FULL,
    "qiskit-src": _FULL,
    "quil2": _QUIL,
    "pyquil-src": _QUIL | {"id"},
    "ionq-json": frozenset(
        {"x", "y", "z", "h", "s", "sdg", "t", "tdg", "sx", "rx", "ry", "rz", "cx", "swap"}
    ),
    "quirk-json": frozenset(
        {"id", "h", "x", "y", "z", "s", "t", "sdg", "tdg", "cx", "cz", "ccx", "swap", "cswap"}
    ),
    "cirq-src": _FULL - {"u2", "u3"},
}

_MAX_REWRITES = 64


def _rule(gate: Gate) -> list[Gate] | None:
    """Rewrite one gate a single step toward more primitive gates."""
    q = gate.qubits
    p = gate.params
    name = gate.name
    if name == "id":
        return []
    if name == "u1":
        return [Gate("p", p, q)]
    if name == "s":
        return [Gate("p", (math.pi / 2,), q)]
    if name == "sdg":
        return [Gate("p", (-math.pi / 2,), q)]
    if name == "t":
        return [Gate("p", (math.pi / 4,), q)]
    if name == "tdg":
        return [Gate("p", (-math.pi / 4,), q)]
    if name == "p":
        return [Gate("rz", p, q)]  # differs by global phase only
    if name == "sx":
        return [Gate("rx", (math.pi / 2,), q)]  # global phase
    if name == "u2":
        return [Gate("u3", (math.pi / 2, p[0], p[1]), q)]
    if name == "u3":
        theta, phi, lam = p
        return [Gate("rz", (lam,), q), Gate("ry", (theta,), q), Gate("rz", (phi,), q)]
    if name == "cy":
        a, b = q
        return [Gate("sdg", (), (b,)), Gate("cx", (), (a, b)), Gate("s", (), (b,))]
    if name == "cz":
        a, b = q
        return [Gate("h", (), (b,)), Gate("cx", (), (a, b)), Gate("h", (), (b,))]
    if name == "ch":
        a, b = q  # qelib1 sequence, exact
        return [
            Gate("h", (), (b,)),
            Gate("sdg", (), (b,)),
            Gate("cx", (), (a, b)),
            Gate("h", (), (b,)),
            Gate("t", (), (b,)),
            Gate("cx", (), (a, b)),
            Gate("t", (), (b,)),
            Gate("h", (), (b,)),
            Gate("s", (), (b,)),
            Gate("x", (), (b,)),
            Gate("s", (), (a,)),
        ]
    if name == "crz":
        a, b = q
        return [
            Gate("rz", (p[0] / 2,), (b,)),
            Gate("cx", (), (a, b)),
            Gate("rz", (-p[0] / 2,), (b,)),
            Gate("cx", (), (a, b)),
        ]
    if name == "cp":
        a, b = q  # qelib1 cu1, exact
        return [
            Gate("p", (p[0] / 2,), (a,)),
            Gate("cx", (), (a, b)),
            Gate("p", (-p[0] / 2,), (b,)),
            Gate("cx", (), (a, b)),
            Gate("p", (p[0] / 2,), (b,)),
        ]
    if name == "swap":
        a, b = q
        return [Gate("cx", (), (a, b)), Gate("cx", (), (b, a)), Gate("cx", (), (a, b))]
    if name == "ccx":
        a, b, c = q  # standard six-CX form
        return [
            Gate("h", (), (c,)),
            Gate("cx", (), (b, c)),
            Gate("tdg", (), (c,)),
            Gate("cx", (), (a, c)),
            Gate("t", (), (c,)),
            Gate("cx", (), (b, c)),
            Gate("tdg", (), (c,)),
            Gate("cx", (), (a, c)),
            Gate("t", (), (b,)),
            Gate("t", (), (c,)),
            Gate("h", (), (c,)),
            Gate("cx", (), (a, b)),
            Gate("t", (), (a,)),
            Gate("tdg", (), (b,)),
            Gate("cx", (), (a, b)),
        ]
    if name == "cswap":
        a, b, c = q
        return [Gate("cx", (), (c, b)), Gate("ccx", (), (a, b, c)), Gate("cx", (), (c, b))]
    return None


def _lower_gate(gate: Gate, native: frozenset[str], target: str, depth: int) -> list[Gate]:
    if gate.name in native:
        return [gate]
    if depth > _MAX_REWRITES:  # pragma: no cover - rule table is finite
        raise UnsupportedForTarget(f"gate {gate.name}", target)
    replacement = _rule(gate)
    if replacement is None:
        raise UnsupportedForTarget(f"gate {gate.name}", target)
    out: list[Gate] = []
    for sub in replacement:
        out.extend(_lower_gate(sub, native, target, depth + 1))
    return out


def decompose_for(circuit: Circuit, target: str) -> Circuit:
    """Rewrite to gates native to `target`; non-gate ops pass through."""
    if target not in NATIVE_GATES:
        raise UnknownDialect(f"unknown target dialect {target!r}")
    native = NATIVE_GATES[target]
    new_ops: list[Op] = []
    changed = False
    for op in circuit.ops:
        if isinstance(op, Gate):
            lowered = _lower_gate(op, native, target, 0)
            changed = changed or lowered != [op]
            new_ops.extend(lowered)
        elif isinstance(op, Conditional):
            lowered = _lower_gate(op.gate, native, target, 0)
            changed = changed or lowered != [op.gate]
            new_ops.extend(Conditional(op.creg, op.value, g) for g in lowered)
        else:
            new_ops.append(op)
    if not changed:
        return circuit
    return Circuit(
        num_qubits=circuit.num_qubits,
        ops=tuple(new_ops),
        qregs=circuit.qregs,
        cregs=circuit.cregs,
        gate_defs=circuit.gate_defs,
        name=circuit.name,
    )
