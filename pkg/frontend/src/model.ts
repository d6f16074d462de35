/**
 * Local circuit model for the designer grid.
 *
 * Holds the IR exactly as the service defines it and derives the column
 * layout for rendering. Edits are structural only (append/remove ops, resize
 * wires); parsing and simulation truth always comes from the service.
 */
import type { CircuitIR, CircuitOp, GateOp } from './types.js';

/** palette entries: the standard table's one- and two-qubit gates + measure */
export interface PaletteGate {
  name: string;
  arity: 1 | 2;
  params: number;
  label: string;
}

export const PALETTE: PaletteGate[] = [
  { name: 'h', arity: 1, params: 0, label: 'H' },
  { name: 'x', arity: 1, params: 0, label: 'X' },
  { name: 'y', arity: 1, params: 0, label: 'Y' },
  { name: 'z', arity: 1, params: 0, label: 'Z' },
  { name: 's', arity: 1, params: 0, label: 'S' },
  { name: 'sdg', arity: 1, params: 0, label: 'S†' },
  { name: 't', arity: 1, params: 0, label: 'T' },
  { name: 'tdg', arity: 1, params: 0, label: 'T†' },
  { name: 'sx', arity: 1, params: 0, label: '√X' },
  { name: 'rx', arity: 1, params: 1, label: 'Rx' },
  { name: 'ry', arity: 1, params: 1, label: 'Ry' },
  { name: 'rz', arity: 1, params: 1, label: 'Rz' },
  { name: 'p', arity: 1, params: 1, label: 'P' },
  { name: 'cx', arity: 2, params: 0, label: 'CX' },
  { name: 'cy', arity: 2, params: 0, label: 'CY' },
  { name: 'cz', arity: 2, params: 0, label: 'CZ' },
  { name: 'ch', arity: 2, params: 0, label: 'CH' },
  { name: 'swap', arity: 2, params: 0, label: 'SW' },
  { name: 'cp', arity: 2, params: 1, label: 'CP' },
  { name: 'crz', arity: 2, params: 1, label: 'CRz' },
  { name: 'measure', arity: 1, params: 0, label: 'M' },
];

const CONTROL_GATES = new Set(['cx', 'cy', 'cz', 'ch', 'cp', 'crz']);

export type CellRole =
  | 'box'
  | 'control'
  | 'target'
  | 'swap'
  | 'measure'
  | 'link';

export interface GridCell {
  opIndex: number;
  role: CellRole;
  label: string;
}

/** cells[qubit][column]; null = bare wire */
export type Grid = (GridCell | null)[][];

type Wire = string;

function opWires(op: CircuitOp, cregSizes: Map<string, number>): Wire[] {
  switch (op.kind) {
    case 'gate':
      return op.qubits.map((q) => `q${q}`);
    case 'measure':
      return [`q${op.qubit}`, `c:${op.creg}:${op.bit}`];
    case 'reset':
      return [`q${op.qubit}`];
    case 'barrier':
      return op.qubits.map((q) => `q${q}`);
    case 'conditional': {
      const size = cregSizes.get(op.creg) ?? 0;
      const bits = [];
      for (let b = 0; b < size; b++) bits.push(`c:${op.creg}:${b}`);
      return [...op.gate.qubits.map((q) => `q${q}`), ...bits];
    }
  }
}

/** greedy left-packing, matching the service's column semantics */
export function moments(ir: CircuitIR): number[][] {
  const sizes = new Map(ir.cregs.map((r) => [r.name, r.size]));
  const nextFree = new Map<Wire, number>();
  const cols: number[][] = [];
  ir.ops.forEach((op, i) => {
    const wires = opWires(op, sizes);
    let col = 0;
    for (const w of wires) col = Math.max(col, nextFree.get(w) ?? 0);
    while (cols.length <= col) cols.push([]);
    cols[col].push(i);
    for (const w of wires) nextFree.set(w, col + 1);
  });
  return cols;
}

function opQubits(op: CircuitOp): number[] {
  switch (op.kind) {
    case 'gate':
      return op.qubits;
    case 'measure':
    case 'reset':
      return [op.qubit];
    case 'barrier':
      return op.qubits;
    case 'conditional':
      return op.gate.qubits;
  }
}

function gateLabel(name: string): string {
  const entry = PALETTE.find((g) => g.name === name);
  return entry ? entry.label : name;
}

function cellsForOp(op: CircuitOp, opIndex: number): Map<number, GridCell> {
  const out = new Map<number, GridCell>();
  const inner: CircuitOp = op.kind === 'conditional' ? op.gate : op;
  const prefix = op.kind === 'conditional' ? '?' : '';
  if (inner.kind === 'measure') {
    out.set(inner.qubit, { opIndex, role: 'measure', label: 'M' });
  } else if (inner.kind === 'reset') {
    out.set(inner.qubit, { opIndex, role: 'box', label: '|0⟩' });
  } else if (inner.kind === 'barrier') {
    for (const q of inner.qubits) out.set(q, { opIndex, role: 'box', label: '░' });
  } else if (inner.kind === 'gate') {
    const g = inner as GateOp;
    if (g.qubits.length === 2 && CONTROL_GATES.has(g.name)) {
      out.set(g.qubits[0], { opIndex, role: 'control', label: '•' });
      out.set(g.qubits[1], {
        opIndex,
        role: 'target',
        label: prefix + gateLabel(g.name).replace(/^C/i, ''),
      });
    } else if (g.name === 'swap') {
      for (const q of g.qubits) out.set(q, { opIndex, role: 'swap', label: '✕' });
    } else {
      for (const q of g.qubits)
        out.set(q, { opIndex, role: 'box', label: prefix + gateLabel(g.name) });
    }
  }
  // vertical link cells between the op's extremes
  const qs = opQubits(inner);
  if (qs.length > 1) {
    const lo = Math.min(...qs);
    const hi = Math.max(...qs);
    for (let q = lo + 1; q < hi; q++) {
      if (!out.has(q)) out.set(q, { opIndex, role: 'link', label: '│' });
    }
  }
  return out;
}

export class CircuitModel {
  private ir: CircuitIR;

  constructor(ir?: CircuitIR) {
    this.ir = ir ?? CircuitModel.emptyIr(2);
  }

  static emptyIr(qubits: number): CircuitIR {
    return {
      name: 'designer',
      qubits,
      cregs: qubits > 0 ? [{ name: 'c', size: qubits }] : [],
      ops: [],
    };
  }

  get circuit(): CircuitIR {
    return this.ir;
  }

  get numQubits(): number {
    return this.ir.qubits;
  }

  setCircuit(ir: CircuitIR): void {
    this.ir = ir;
  }

  /** designer convention: one creg "c" sized to the wire count */
  private ensureMeasureCreg(): string {
    let creg = this.ir.cregs.find((r) => r.name === 'c');
    if (!creg) {
      creg = { name: 'c', size: this.ir.qubits };
      this.ir = { ...this.ir, cregs: [...this.ir.cregs, creg] };
    } else if (creg.size < this.ir.qubits) {
      this.ir = {
        ...this.ir,
        cregs: this.ir.cregs.map((r) =>
          r.name === 'c' ? { name: 'c', size: this.ir.qubits } : r,
        ),
      };
    }
    return 'c';
  }

  placeGate(name: string, qubits: number[], params: number[] = []): void {
    if (name === 'measure') {
      const creg = this.ensureMeasureCreg();
      this.ir = {
        ...this.ir,
        ops: [...this.ir.ops, { kind: 'measure', qubit: qubits[0], creg, bit: qubits[0] }],
      };
      return;
    }
    this.ir = {
      ...this.ir,
      ops: [...this.ir.ops, { kind: 'gate', name, params, qubits }],
    };
  }

  removeOp(opIndex: number): void {
    this.ir = { ...this.ir, ops: this.ir.ops.filter((_, i) => i !== opIndex) };
  }

  setQubitCount(count: number): void {
    const n = Math.max(1, count);
    const ops = this.ir.ops.filter((op) =>
      opQubits(op.kind === 'conditional' ? op.gate : op).every((q) => q < n),
    );
    const cregs = this.ir.cregs.map((r) =>
      r.name === 'c' ? { name: 'c', size: n } : r,
    );
    this.ir = { ...this.ir, qubits: n, cregs: cregs.length ? cregs : [{ name: 'c', size: n }], ops };
  }

  moments(): number[][] {
    return moments(this.ir);
  }

  /** cells[qubit][column], plus one spare empty column for placement */
  grid(): Grid {
    const cols = this.moments();
    const width = cols.length + 1;
    const out: Grid = [];
    for (let q = 0; q < this.ir.qubits; q++) {
      out.push(new Array(width).fill(null));
    }
    cols.forEach((column, c) => {
      for (const opIndex of column) {
        const cells = cellsForOp(this.ir.ops[opIndex], opIndex);
        for (const [q, cell] of cells) {
          if (q < out.length) out[q][c] = cell;
        }
      }
    });
    return out;
  }
}
