/**
 * Schema-faithful in-memory stand-in for the qbridge service.
 *
 * Supports the computational subset the UI tests exercise (h, x, cx,
 * terminal measures) with a tiny real-amplitude statevector, so mocked
 * responses carry honestly computed probabilities in the exact SimResult
 * shape. The real-service integration test covers everything beyond this.
 */
import type { DesignerService, SimulateRequest } from '../src/api.js';
import { moments } from '../src/model.js';
import type { CircuitIR, ExampleEntry, SimResult, TargetDialect } from '../src/types.js';

export const BELL_QASM = [
  'OPENQASM 2.0;',
  'include "qelib1.inc";',
  'qreg q[2];',
  'creg c[2];',
  'h q[0];',
  'cx q[0],q[1];',
  'measure q[0] -> c[0];',
  'measure q[1] -> c[1];',
  '',
].join('\n');

export const BELL_IR: CircuitIR = {
  name: 'main',
  qubits: 2,
  cregs: [{ name: 'c', size: 2 }],
  ops: [
    { kind: 'gate', name: 'h', params: [], qubits: [0] },
    { kind: 'gate', name: 'cx', params: [], qubits: [0, 1] },
    { kind: 'measure', qubit: 0, creg: 'c', bit: 0 },
    { kind: 'measure', qubit: 1, creg: 'c', bit: 1 },
  ],
};

const SQRT_HALF = Math.SQRT1_2;

function applyGate(state: number[], name: string, qubits: number[], n: number): void {
  const size = 1 << n;
  if (name === 'h' || name === 'x') {
    const q = qubits[0];
    const mask = 1 << q;
    for (let i = 0; i < size; i++) {
      if (i & mask) continue;
      const j = i | mask;
      const a = state[i];
      const b = state[j];
      if (name === 'x') {
        state[i] = b;
        state[j] = a;
      } else {
        state[i] = SQRT_HALF * (a + b);
        state[j] = SQRT_HALF * (a - b);
      }
    }
    return;
  }
  if (name === 'cx') {
    const control = 1 << qubits[0];
    const target = 1 << qubits[1];
    for (let i = 0; i < size; i++) {
      if ((i & control) && !(i & target)) {
        const j = i | target;
        const a = state[i];
        state[i] = state[j];
        state[j] = a;
      }
    }
    return;
  }
  if (name === 'id') return;
  throw { detail: { stage: 'simulate', message: `fake service: gate ${name}` } };
}

function probOne(state: number[], qubit: number, n: number): number {
  let p = 0;
  for (let i = 0; i < 1 << n; i++) {
    if (i & (1 << qubit)) p += state[i] * state[i];
  }
  return p;
}

function simulateIr(ir: CircuitIR): SimResult {
  const n = ir.qubits;
  const state = new Array(1 << n).fill(0);
  state[0] = 1;
  const snapshots: number[][] = [];
  const cols = moments(ir);
  for (const column of cols) {
    for (const opIndex of column) {
      const op = ir.ops[opIndex];
      if (op.kind === 'gate') applyGate(state, op.name, op.qubits, n);
      else if (op.kind !== 'measure' && op.kind !== 'barrier') {
        throw { detail: { stage: 'simulate', message: `fake service: ${op.kind}` } };
      }
    }
    const row = [];
    for (let q = 0; q < n; q++) row.push(probOne(state, q, n));
    snapshots.push(row);
  }
  const layout: Array<[string, number]> = [];
  for (const creg of ir.cregs) {
    for (let b = 0; b < creg.size; b++) layout.push([creg.name, b]);
  }
  const sources = new Map<string, number>();
  for (const op of ir.ops) {
    if (op.kind === 'measure') sources.set(`${op.creg}:${op.bit}`, op.qubit);
  }
  const probabilities: Record<string, number> = {};
  for (let i = 0; i < 1 << n; i++) {
    const p = state[i] * state[i];
    if (p <= 0) continue;
    let key: string;
    if (sources.size === 0) {
      key = i.toString(2).padStart(Math.max(n, 1), '0');
      if (n === 0) key = '';
    } else {
      const bits = layout.map(([name, b]) => {
        const q = sources.get(`${name}:${b}`);
        return q === undefined ? 0 : (i >> q) & 1;
      });
      key = bits.reverse().join('');
    }
    probabilities[key] = (probabilities[key] ?? 0) + p;
  }
  return { probabilities, snapshots, seed: 1234 };
}

const EXPORT_PREFIX = 'FAKE-IR:';

export class FakeService implements DesignerService {
  calls: string[] = [];
  delayNextSimulate: Promise<void> | null = null;
  simulateSignals: (AbortSignal | undefined)[] = [];

  examples(): Promise<ExampleEntry[]> {
    this.calls.push('examples');
    return Promise.resolve([
      {
        name: 'bell',
        dialect: 'openqasm2',
        description: 'two-qubit Bell pair, measured',
        source: BELL_QASM,
      },
    ]);
  }

  parse(request: { dialect?: string; source?: string; ir?: CircuitIR }): Promise<CircuitIR> {
    this.calls.push('parse');
    if (request.ir) return Promise.resolve(structuredClone(request.ir));
    const source = request.source ?? '';
    if (source === BELL_QASM) return Promise.resolve(structuredClone(BELL_IR));
    if (source.startsWith(EXPORT_PREFIX)) {
      return Promise.resolve(JSON.parse(source.slice(EXPORT_PREFIX.length)));
    }
    return Promise.reject({
      detail: { stage: 'parse', message: 'fake service: unknown source', line: 1, column: 1 },
    });
  }

  emit(ir: CircuitIR, target: TargetDialect): Promise<string> {
    this.calls.push(`emit:${target}`);
    return Promise.resolve(EXPORT_PREFIX + JSON.stringify(ir));
  }

  convert(_from: string | undefined, to: TargetDialect, source: string): Promise<string> {
    this.calls.push(`convert:${to}`);
    return Promise.resolve(`// converted to ${to}\n${source}`);
  }

  async simulate(request: SimulateRequest, signal?: AbortSignal): Promise<SimResult> {
    this.calls.push('simulate');
    this.simulateSignals.push(signal);
    const delay = this.delayNextSimulate;
    this.delayNextSimulate = null;
    if (delay) await delay;
    if (!request.ir) {
      throw { detail: { stage: 'request', message: 'fake service wants ir' } };
    }
    return simulateIr(request.ir);
  }
}
