"""Standalone program generation for Qiskit, Cirq and pyQuil.

Each emitter produces a complete script that rebuilds the circuit with the
framework's own API, runs its local simulator for 1024 shots and prints a
counts dictionary whose keys match this package's bitstring rendering
(all classical bits, most significant first). Circuits without measurements
get a measure-all epilogue so the printed counts stay meaningful.
"""
from __future__ import annotations

from ..errors import UnsupportedForTarget
from ..ir import Barrier, Circuit, Conditional, Gate, Measure, Op, Reset

DEFAULT_SHOTS = 1024


def _f(x: float) -> str:
    return repr(float(x))


def _measure_plan(circuit: Circuit) -> tuple[list[Op], list[tuple[str, int]]]:
    """Ops plus an implicit measure-all when the circuit has no measures."""
    ops = list(circuit.ops)
    cregs = list(circuit.cregs)
    if not any(isinstance(op, Measure) for op in ops) and circuit.num_qubits:
        name = "meas"
        while name in dict(cregs):
            name += "_"
        cregs.append((name, circuit.num_qubits))
        ops.extend(Measure(q, name, q) for q in range(circuit.num_qubits))
    return ops, cregs


# --- Qiskit -------------------------------------------------------------------

_QISKIT_METHODS = {
    "id": "id",
    "x": "x",
    "y": "y",
    "z": "z",
    "h": "h",
    "s": "s",
    "sdg": "sdg",
    "t": "t",
    "tdg": "tdg",
    "sx": "sx",
    "rx": "rx",
    "ry": "ry",
    "rz": "rz",
    "p": "p",
    "u1": "p",
    "cx": "cx",
    "cy": "cy",
    "cz": "cz",
    "ch": "ch",
    "swap": "swap",
    "crz": "crz",
    "cp": "cp",
    "ccx": "ccx",
    "cswap": "cswap",
}


def _qiskit_gate(op: Gate) -> str:
    if op.name == "u2":
        phi, lam = op.params
        return f"qc.u({_f(3.141592653589793 / 2)}, {_f(phi)}, {_f(lam)}, {op.qubits[0]})"
    if op.name == "u3":
        theta, phi, lam = op.params
        return f"qc.u({_f(theta)}, {_f(phi)}, {_f(lam)}, {op.qubits[0]})"
    method = _QISKIT_METHODS.get(op.name)
    if method is None:
        raise UnsupportedForTarget(f"gate {op.name}", "qiskit-src")
    args = [_f(p) for p in op.params] + [str(q) for q in op.qubits]
    return f"qc.{method}({', '.join(args)})"


def emit_qiskit(circuit: Circuit) -> str:
    ops, cregs = _measure_plan(circuit)
    lines = [
        "from qiskit import QuantumCircuit, QuantumRegister, ClassicalRegister",
        "from qiskit.providers.basic_provider import BasicSimulator",
        "",
        f'q = QuantumRegister({circuit.num_qubits}, "q")',
    ]
    for name, size in cregs:
        lines.append(f'c_{name} = ClassicalRegister({size}, "{name}")')
    regs = ", ".join(["q"] + [f"c_{name}" for name, _ in cregs])
    lines.append(f"qc = QuantumCircuit({regs})")
    lines.append("")
    for op in ops:
        if isinstance(op, Gate):
            lines.append(_qiskit_gate(op))
        elif isinstance(op, Measure):
            lines.append(f"qc.measure(q[{op.qubit}], c_{op.creg}[{op.bit}])")
        elif isinstance(op, Reset):
            lines.append(f"qc.reset(q[{op.qubit}])")
        elif isinstance(op, Barrier):
            args = ", ".join(f"q[{qb}]" for qb in op.qubits)
            lines.append(f"qc.barrier({args})")
        elif isinstance(op, Conditional):
            lines.append(f"with qc.if_test((c_{op.creg}, {op.value})):")
            lines.append("    " + _qiskit_gate(op.gate))
        else:  # pragma: no cover - defensive
            raise TypeError(f"unknown op {op!r}")
    lines += [
        "",
        "backend = BasicSimulator()",
        f"result = backend.run(qc, shots={DEFAULT_SHOTS}, seed_simulator=1234).result()",
        'counts = {key.replace(" ", ""): value for key, value in result.get_counts().items()}',
        "print(dict(sorted(counts.items())))",
        "",
    ]
    return "\n".join(lines)


# --- Cirq ---------------------------------------------------------------------

_CIRQ_SIMPLE = {
    "id": "cirq.I(q[{0}])",
    "x": "cirq.X(q[{0}])",
    "y": "cirq.Y(q[{0}])",
    "z": "cirq.Z(q[{0}])",
    "h": "cirq.H(q[{0}])",
    "s": "cirq.S(q[{0}])",
    "t": "cirq.T(q[{0}])",
    "sdg": "(cirq.S ** -1)(q[{0}])",
    "tdg": "(cirq.T ** -1)(q[{0}])",
    "sx": "(cirq.X ** 0.5)(q[{0}])",
    "cx": "cirq.CNOT(q[{0}], q[{1}])",
    "cz": "cirq.CZ(q[{0}], q[{1}])",
    "swap": "cirq.SWAP(q[{0}], q[{1}])",
    "ccx": "cirq.CCX(q[{0}], q[{1}], q[{2}])",
    "cswap": "cirq.CSWAP(q[{0}], q[{1}], q[{2}])",
}


def _cirq_gate(op: Gate) -> str:
    if op.name in _CIRQ_SIMPLE:
        return _CIRQ_SIMPLE[op.name].format(*op.qubits)
    if op.name in ("rx", "ry", "rz"):
        return f"cirq.{op.name}({_f(op.params[0])})(q[{op.qubits[0]}])"
    if op.name in ("p", "u1"):
        return f"cirq.ZPowGate(exponent={_f(op.params[0])} / 3.141592653589793)(q[{op.qubits[0]}])"
    if op.name == "cy":
        return f"cirq.Y(q[{op.qubits[1]}]).controlled_by(q[{op.qubits[0]}])"
    if op.name == "ch":
        return f"cirq.H(q[{op.qubits[1]}]).controlled_by(q[{op.qubits[0]}])"
    if op.name == "crz":
        return (
            f"cirq.rz({_f(op.params[0])})(q[{op.qubits[1]}])"
            f".controlled_by(q[{op.qubits[0]}])"
        )
    if op.name == "cp":
        return (
            f"cirq.CZPowGate(exponent={_f(op.params[0])} / 3.141592653589793)"
            f"(q[{op.qubits[0]}], q[{op.qubits[1]}])"
        )
    raise UnsupportedForTarget(f"gate {op.name}", "cirq-src")


def emit_cirq(circuit: Circuit) -> str:
    ops, cregs = _measure_plan(circuit)
    n = circuit.num_qubits
    lines = [
        "import collections",
        "",
        "import cirq",
        "",
        f"q = cirq.LineQubit.range({n})",
        "circuit = cirq.Circuit()",
    ]
    measure_keys: list[tuple[str, int, int]] = []  # (key, global bit pos, qubit)
    layout = [(name, b) for name, size in cregs for b in range(size)]
    for op in ops:
        if isinstance(op, Gate):
            lines.append(f"circuit.append({_cirq_gate(op)})")
        elif isinstance(op, Measure):
            key = f"{op.creg}_{op.bit}"
            pos = layout.index((op.creg, op.bit))
            measure_keys = [mk for mk in measure_keys if mk[0] != key]
            measure_keys.append((key, pos, op.qubit))
            lines.append(f'circuit.append(cirq.measure(q[{op.qubit}], key="{key}"))')
        elif isinstance(op, Reset):
            lines.append(f"circuit.append(cirq.reset(q[{op.qubit}]))")
        elif isinstance(op, Barrier):
            continue  # scheduling only
        elif isinstance(op, Conditional):
            raise UnsupportedForTarget("conditional", "cirq-src")
        else:  # pragma: no cover - defensive
            raise TypeError(f"unknown op {op!r}")
    total_bits = len(layout)
    lines += [
        "",
        "simulator = cirq.Simulator(seed=1234)",
        f"result = simulator.run(circuit, repetitions={DEFAULT_SHOTS})",
        "counts = collections.Counter()",
        f"for i in range({DEFAULT_SHOTS}):",
        f'    bits = ["0"] * {total_bits}',
    ]
    for key, pos, _qubit in measure_keys:
        lines.append(f'    bits[{pos}] = str(int(result.measurements["{key}"][i][0]))')
    lines += [
        '    counts["".join(reversed(bits))] += 1',
        "print(dict(sorted(counts.items())))",
        "",
    ]
    return "\n".join(lines)


# --- pyQuil -------------------------------------------------------------------

_PYQUIL_NAMES = {
    "id": "I",
    "h": "H",
    "x": "X",
    "y": "Y",
    "z": "Z",
    "s": "S",
    "t": "T",
    "rx": "RX",
    "ry": "RY",
    "rz": "RZ",
    "p": "PHASE",
    "u1": "PHASE",
    "cx": "CNOT",
    "cz": "CZ",
    "swap": "SWAP",
    "ccx": "CCNOT",
    "cswap": "CSWAP",
}


def emit_pyquil(circuit: Circuit) -> str:
    ops, cregs = _measure_plan(circuit)
    layout = [(name, b) for name, size in cregs for b in range(size)]
    for op in ops:
        if isinstance(op, Conditional):
            raise UnsupportedForTarget("conditional", "pyquil-src")
        if isinstance(op, Gate) and op.name not in _PYQUIL_NAMES:
            raise UnsupportedForTarget(f"gate {op.name}", "pyquil-src")
    used_names = sorted({_PYQUIL_NAMES[op.name] for op in ops if isinstance(op, Gate)})
    lines = ["import collections", "", "from pyquil import Program"]
    if used_names:
        lines.append(f"from pyquil.gates import MEASURE, {', '.join(used_names)}")
    else:
        lines.append("from pyquil.gates import MEASURE")
    lines += ["from pyquil.pyqvm import PyQVM", "", "program = Program()"]
    for name, size in cregs:
        lines.append(f'ro_{name} = program.declare("{name}", "BIT", {size})')
    for op in ops:
        if isinstance(op, Gate):
            params = ", ".join(_f(p) for p in op.params)
            qubits = ", ".join(str(qb) for qb in op.qubits)
            args = f"{params}, {qubits}" if params else qubits
            lines.append(f"program += {_PYQUIL_NAMES[op.name]}({args})")
        elif isinstance(op, Measure):
            lines.append(f"program += MEASURE({op.qubit}, ro_{op.creg}[{op.bit}])")
        elif isinstance(op, Reset):
            lines.append(f"program += Program('RESET {op.qubit}')")
        elif isinstance(op, Barrier):
            continue
    bit_refs = ", ".join(f'("{name}", {bit})' for name, bit in layout)
    lines += [
        "",
        f"qvm = PyQVM(n_qubits={max(circuit.num_qubits, 1)}, seed=1234)",
        "counts = collections.Counter()",
        f"layout = [{bit_refs}]",
        f"for _ in range({DEFAULT_SHOTS}):",
        "    qvm.execute(program)",
        '    bits = ["0"] * len(layout)',
        "    for j, (region, index) in enumerate(layout):",
        "        bits[j] = str(int(qvm.read_memory(region_name=region)[index]))",
        '    counts["".join(reversed(bits))] += 1',
        "print(dict(sorted(counts.items())))",
        "",
    ]
    return "\n".join(lines)
