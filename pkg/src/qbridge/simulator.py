"""Exact statevector execution, shot sampling, and per-moment inspection.

Qubit ordering is little-endian: qubit 0 is the least significant bit of the
basis index. Rendered bitstrings put the most significant qubit (or classical
bit) first, so the string for basis index 2 of a 2-qubit state is "10"
(qubit 1 set, qubit 0 clear).

Randomness comes from NumPy's PCG64 via ``numpy.random.default_rng``; the seed
actually used is recorded in every result so shot runs replay bit-for-bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import SemanticError, ShotsRequired, TooManyQubits, UnknownGate
from .gates import STANDARD_GATES, GateDef
from .ir import Barrier, Circuit, Conditional, Gate, Measure, Reset
from .ir import moments as _moments
from .ir import validate as _validate

MAX_SHOTS = 1 << 26
MAX_QUBIT_LIMIT = 30


@dataclass(frozen=True)
class RunOptions:
    shots: int = 0  # 0 = exact-only
    seed: int | None = None
    capture_snapshots: bool = False
    max_qubits: int = 24

    def __post_init__(self):
        if not 0 <= self.shots <= MAX_SHOTS:
            raise ValueError(f"shots must be in [0, {MAX_SHOTS}]")
        if not 0 < self.max_qubits <= MAX_QUBIT_LIMIT:
            raise ValueError(f"max_qubits must be in [1, {MAX_QUBIT_LIMIT}]")
        if self.seed is not None and self.seed < 0:
            raise ValueError("seed must be an unsigned integer")


@dataclass(frozen=True)
class SimResult:
    """Probability histogram over classical outcomes plus optional extras.

    For circuits without measurements `probabilities` is empty and the
    distribution over basis states is in `full_state_probabilities`.
    """

    probabilities: dict[str, float]
    full_state_probabilities: dict[str, float] | None
    shots: dict[str, int] | None
    snapshots: list[list[float]] | None
    seed: int
    exact: bool

    def distribution(self) -> dict[str, float]:
        if self.full_state_probabilities is not None:
            return self.full_state_probabilities
        return self.probabilities


def result_to_json(result: SimResult) -> dict:
    """SimResult JSON: unmeasured circuits report the full-state distribution
    under "probabilities" (there is no classical register to index)."""
    out: dict = {"probabilities": {k: result.distribution()[k] for k in sorted(result.distribution())}}
    if result.shots is not None:
        out["shots"] = {k: result.shots[k] for k in sorted(result.shots)}
    if result.snapshots is not None:
        out["snapshots"] = result.snapshots
    out["seed"] = result.seed
    return out


def initial_state(num_qubits: int) -> np.ndarray:
    state = np.zeros(1 << num_qubits, dtype=complex)
    state[0] = 1.0
    return state


def apply_gate(
    state: np.ndarray,
    gate: GateDef,
    params: Sequence[float],
    qubits: Sequence[int],
) -> np.ndarray:
    """Apply a gate's unitary on the given qubits via stride iteration.

    Only the 2^k-dim gate matrix is materialized, never the full operator.
    """
    n = state.shape[0].bit_length() - 1
    k = len(qubits)
    if k != gate.num_qubits:
        raise ValueError(f"gate {gate.name!r} wants {gate.num_qubits} qubits, got {k}")
    if len(set(qubits)) != k or any(not 0 <= q < n for q in qubits):
        raise ValueError(f"bad qubit operands {list(qubits)} for {n}-qubit state")
    u = gate.matrix(tuple(params))
    psi = state.reshape([2] * n)  # axis a holds qubit n-1-a
    axes = [n - 1 - q for q in qubits]
    psi = np.moveaxis(psi, axes, range(k))
    psi = (u @ psi.reshape(1 << k, -1)).reshape([2] * n)
    return np.moveaxis(psi, range(k), axes).reshape(-1)


def _prob_one(state: np.ndarray, qubit: int, n: int) -> float:
    probs = np.abs(state.reshape([2] * n)) ** 2
    axis = n - 1 - qubit
    others = tuple(a for a in range(n) if a != axis)
    return float(probs.sum(axis=others)[1]) if others else float(probs[1])


def _project(state: np.ndarray, qubit: int, outcome: int, n: int) -> np.ndarray:
    psi = state.reshape([2] * n).copy()
    index = [slice(None)] * n
    index[n - 1 - qubit] = 1 - outcome
    psi[tuple(index)] = 0.0
    flat = psi.reshape(-1)
    norm = np.linalg.norm(flat)
    return flat / norm if norm > 1e-12 else flat


def _bitstring(bits: Sequence[int]) -> str:
    """Render global little-endian bits most-significant-first."""
    return "".join(str(b) for b in reversed(bits))


def _needs_trajectories(circuit: Circuit) -> bool:
    """Exact mode needs unitary-until-terminal-measure structure.

    Triggers: any conditional; a gate/reset after a measure on the same
    qubit; a reset on a qubit already disturbed (its pre-reset state could be
    entangled, which a pure statevector cannot represent post-reset).
    """
    touched: set[int] = set()
    measured: set[int] = set()
    for op in circuit.ops:
        if isinstance(op, Conditional):
            return True
        if isinstance(op, Gate):
            if any(q in measured for q in op.qubits):
                return True
            touched.update(op.qubits)
        elif isinstance(op, Reset):
            if op.qubit in measured or op.qubit in touched:
                return True
        elif isinstance(op, Measure):
            measured.add(op.qubit)
            touched.add(op.qubit)
    return False


def _check_ready(circuit: Circuit, options: RunOptions) -> None:
    if circuit.num_qubits > options.max_qubits:
        raise TooManyQubits(circuit.num_qubits, options.max_qubits)
    if circuit.gate_defs:
        raise SemanticError("simulate requires an expanded circuit (run expand_macros)")
    diags = _validate(circuit)
    if diags:
        raise SemanticError(f"invalid circuit: {diags[0].message}")


def _resolve_std(name: str) -> GateDef:
    gdef = STANDARD_GATES.get(name)
    if gdef is None:
        raise UnknownGate(name)
    return gdef


def _classical_layout(circuit: Circuit) -> list[tuple[str, int]]:
    """Global classical bit order: register declaration order, bit 0 first."""
    return [(name, b) for name, size in circuit.cregs for b in range(size)]


def _exact_run(circuit: Circuit, options: RunOptions, seed: int) -> SimResult:
    n = circuit.num_qubits
    state = initial_state(n)
    snapshots: list[list[float]] | None = None

    if options.capture_snapshots:
        snapshots = []
        for col in _moments(circuit):
            for i in col:
                op = circuit.ops[i]
                if isinstance(op, Gate):
                    state = apply_gate(state, _resolve_std(op.name), op.params, op.qubits)
            snapshots.append([_prob_one(state, q, n) for q in range(n)] if n else [])
    else:
        for op in circuit.ops:
            if isinstance(op, Gate):
                state = apply_gate(state, _resolve_std(op.name), op.params, op.qubits)

    amp2 = np.abs(state) ** 2

    # last write to each classical bit decides which qubit it reads
    bit_source: dict[tuple[str, int], int] = {}
    for op in circuit.ops:
        if isinstance(op, Measure):
            bit_source[(op.creg, op.bit)] = op.qubit

    if not bit_source:
        full = {
            format(i, f"0{n}b"): float(p) for i, p in enumerate(amp2) if p > 0.0
        }
        shots_map = sample(full, options.shots, seed) if options.shots else None
        return SimResult({}, full, shots_map, snapshots, seed, True)

    measured = sorted({q for q in bit_source.values()})
    probs = amp2.reshape([2] * n) if n else amp2.reshape([])
    drop = tuple(n - 1 - q for q in range(n) if q not in measured)
    marginal = probs.sum(axis=drop) if drop else probs
    # marginal axes follow state-tensor order: descending qubit index
    layout = _classical_layout(circuit)
    out: dict[str, float] = {}
    for flat, p in enumerate(np.ravel(marginal)):
        if p <= 0.0:
            continue
        value = {}
        for pos, q in enumerate(measured):  # ascending qubit = ascending bit position
            value[q] = (flat >> pos) & 1
        bits = [value.get(bit_source.get(key, -1), 0) for key in layout]
        key = _bitstring(bits)
        out[key] = out.get(key, 0.0) + float(p)
    shots_map = sample(out, options.shots, seed) if options.shots else None
    return SimResult(out, None, shots_map, snapshots, seed, True)


def _trajectory_run(circuit: Circuit, options: RunOptions, seed: int) -> SimResult:
    if options.shots == 0:
        raise ShotsRequired()
    n = circuit.num_qubits
    layout = _classical_layout(circuit)
    creg_offsets = {name: circuit.creg_offset(name) for name, _ in circuit.cregs}
    creg_sizes = circuit.creg_sizes
    rng = np.random.default_rng(seed)
    counts: dict[str, int] = {}

    for _ in range(options.shots):
        state = initial_state(n)
        clbits = {key: 0 for key in layout}

        def creg_value(name: str) -> int:
            return sum(
                clbits[(name, b)] << b for b in range(creg_sizes[name])
            )

        for op in circuit.ops:
            if isinstance(op, Barrier):
                continue
            if isinstance(op, Conditional):
                if creg_value(op.creg) != op.value:
                    continue
                op = op.gate
            if isinstance(op, Gate):
                state = apply_gate(state, _resolve_std(op.name), op.params, op.qubits)
            elif isinstance(op, Measure):
                p1 = _prob_one(state, op.qubit, n)
                outcome = 1 if rng.random() < p1 else 0
                state = _project(state, op.qubit, outcome, n)
                clbits[(op.creg, op.bit)] = outcome
            elif isinstance(op, Reset):
                p1 = _prob_one(state, op.qubit, n)
                outcome = 1 if rng.random() < p1 else 0
                state = _project(state, op.qubit, outcome, n)
                if outcome:
                    state = apply_gate(state, STANDARD_GATES["x"], (), (op.qubit,))
        key = _bitstring([clbits[k] for k in layout])
        counts[key] = counts.get(key, 0) + 1

    probabilities = {k: c / options.shots for k, c in sorted(counts.items())}
    return SimResult(probabilities, None, counts, None, seed, False)


def simulate(circuit: Circuit, options: RunOptions | None = None) -> SimResult:
    """Execute a valid, macro-expanded circuit.

    Circuits whose measurements are all terminal (and that have no
    conditionals or resets of disturbed qubits) get exact probabilities by
    marginalizing amplitude weight onto the measured classical bits; anything
    else runs seeded per-shot collapse trajectories.
    """
    options = options or RunOptions()
    _check_ready(circuit, options)
    seed = options.seed
    if seed is None:
        seed = int(np.random.SeedSequence().generate_state(1, np.uint64)[0])
    if _needs_trajectories(circuit):
        return _trajectory_run(circuit, options, seed)
    return _exact_run(circuit, options, seed)


def sample(
    probabilities: Mapping[str, float], shots: int, seed: int | None = None
) -> dict[str, int]:
    """Multinomial sampling; deterministic for a fixed seed; counts sum to shots."""
    if shots == 0:
        return {}
    keys = sorted(probabilities)
    p = np.array([probabilities[k] for k in keys], dtype=float)
    total = p.sum()
    if abs(total - 1.0) > 1e-9:
        raise ValueError(f"probabilities sum to {total}, expected 1")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, p / total)
    return {k: int(c) for k, c in zip(keys, counts) if c > 0}
