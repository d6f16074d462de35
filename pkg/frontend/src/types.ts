/**
 * Wire types for the qbridge service API.
 *
 * These mirror the service's published JSON schemas exactly; the UI never
 * invents fields of its own on these objects.
 */

export interface CregDecl {
  name: string;
  size: number;
}

export interface GateOp {
  kind: 'gate';
  name: string;
  params: number[];
  qubits: number[];
}

export interface MeasureOp {
  kind: 'measure';
  qubit: number;
  creg: string;
  bit: number;
}

export interface ResetOp {
  kind: 'reset';
  qubit: number;
}

export interface BarrierOp {
  kind: 'barrier';
  qubits: number[];
}

export interface ConditionalOp {
  kind: 'conditional';
  creg: string;
  value: number;
  gate: GateOp;
}

export type CircuitOp = GateOp | MeasureOp | ResetOp | BarrierOp | ConditionalOp;

export interface CircuitIR {
  name: string;
  qubits: number;
  cregs: CregDecl[];
  ops: CircuitOp[];
}

export interface SimResult {
  probabilities: Record<string, number>;
  shots?: Record<string, number>;
  snapshots?: number[][];
  seed: number;
}

export interface ServiceError {
  stage: string;
  message: string;
  line?: number;
  column?: number;
}

export interface ExampleEntry {
  name: string;
  dialect: string;
  description: string;
  source: string;
}

export const SOURCE_DIALECTS = [
  'openqasm2',
  'quil2',
  'ionq-json',
  'quantum-circuit-json',
  'quirk-json',
] as const;

export const TARGET_DIALECTS = [
  'openqasm2',
  'quil2',
  'ionq-json',
  'quantum-circuit-json',
  'quirk-json',
  'qiskit-src',
  'cirq-src',
  'pyquil-src',
] as const;

export type SourceDialect = (typeof SOURCE_DIALECTS)[number];
export type TargetDialect = (typeof TARGET_DIALECTS)[number];
