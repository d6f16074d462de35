/**
 * DOM view for the designer: gate palette, qubit grid, live histogram,
 * per-moment inspector chips, and the import/export code panel.
 */
import type { DesignerController } from './controller.js';
import { PALETTE } from './model.js';
import type { CircuitModel } from './model.js';
import type { ServiceError, SimResult, TargetDialect } from './types.js';
import { SOURCE_DIALECTS, TARGET_DIALECTS } from './types.js';

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

interface PendingPlacement {
  gate: string;
  params: number[];
  firstQubit: number | null;
}

export class DesignerView {
  readonly root: HTMLElement;
  private controller!: DesignerController;

  private paletteBox = el('div', 'palette');
  private gridBox = el('div', 'grid');
  private histogramBox = el('div', 'histogram');
  private inspectorBox = el('div', 'inspector');
  private statusBox = el('div', 'status');
  private toastBox = el('div', 'toasts');
  private codeText = el('textarea', 'code-text');
  private importSelect = el('select', 'import-dialect');
  private exportSelect = el('select', 'export-dialect');
  private exampleSelect = el('select', 'example-select');
  private shotsInput = el('input', 'shots-input');

  private selected: PendingPlacement | null = null;

  constructor(root: HTMLElement) {
    this.root = root;
  }

  attach(controller: DesignerController): void {
    this.controller = controller;
    this.build();
  }

  private build(): void {
    this.root.textContent = '';
    this.root.classList.add('designer');

    const toolbar = el('div', 'toolbar');
    const title = el('span', 'title', 'qbridge circuit designer');
    toolbar.appendChild(title);

    this.exampleSelect.appendChild(el('option', undefined, 'examples…'));
    const loadBtn = el('button', 'load-example', 'load');
    loadBtn.addEventListener('click', () => {
      const name = this.exampleSelect.value;
      if (name && name !== 'examples…') void this.controller.loadExample(name);
    });
    toolbar.appendChild(this.exampleSelect);
    toolbar.appendChild(loadBtn);

    const clearBtn = el('button', 'clear', 'clear');
    clearBtn.addEventListener('click', () =>
      this.controller.newCircuit(this.controller.model.numQubits),
    );
    toolbar.appendChild(clearBtn);

    const minus = el('button', 'qubit-minus', '−q');
    const plus = el('button', 'qubit-plus', '+q');
    minus.addEventListener('click', () =>
      this.controller.setQubitCount(this.controller.model.numQubits - 1),
    );
    plus.addEventListener('click', () =>
      this.controller.setQubitCount(this.controller.model.numQubits + 1),
    );
    toolbar.appendChild(minus);
    toolbar.appendChild(plus);

    this.shotsInput.setAttribute('type', 'number');
    this.shotsInput.setAttribute('min', '0');
    this.shotsInput.value = '0';
    this.shotsInput.title = 'shots (0 = exact; conditional circuits need shots)';
    this.shotsInput.addEventListener('change', () =>
      this.controller.setShots(Number(this.shotsInput.value) || 0),
    );
    toolbar.appendChild(el('span', 'shots-label', 'shots'));
    toolbar.appendChild(this.shotsInput);
    this.root.appendChild(toolbar);

    for (const gate of PALETTE) {
      const button = el('button', 'palette-gate', gate.label);
      button.dataset.gate = gate.name;
      button.title = gate.arity === 2 ? `${gate.name}: click two wires` : gate.name;
      button.addEventListener('click', () => this.selectGate(gate.name));
      this.paletteBox.appendChild(button);
    }
    this.root.appendChild(this.paletteBox);
    this.root.appendChild(this.statusBox);
    this.root.appendChild(this.gridBox);

    const results = el('div', 'results');
    const histogramPanel = el('div', 'panel');
    histogramPanel.appendChild(el('h3', undefined, 'outcome probabilities'));
    histogramPanel.appendChild(this.histogramBox);
    const inspectorPanel = el('div', 'panel');
    inspectorPanel.appendChild(el('h3', undefined, 'inspector: P(1) per moment'));
    inspectorPanel.appendChild(this.inspectorBox);
    results.appendChild(histogramPanel);
    results.appendChild(inspectorPanel);
    this.root.appendChild(results);

    const codePanel = el('div', 'code-panel');
    codePanel.appendChild(el('h3', undefined, 'import / export'));
    this.importSelect.appendChild(el('option', undefined, 'auto-detect'));
    for (const d of SOURCE_DIALECTS) {
      this.importSelect.appendChild(el('option', undefined, d));
    }
    for (const d of TARGET_DIALECTS) {
      this.exportSelect.appendChild(el('option', undefined, d));
    }
    const importBtn = el('button', 'import', 'import ⬆');
    importBtn.addEventListener('click', () => {
      const dialect = this.importSelect.value;
      void this.controller.importSource(
        dialect === 'auto-detect' ? undefined : dialect,
        this.codeText.value,
      );
    });
    const exportBtn = el('button', 'export', 'export ⬇');
    exportBtn.addEventListener('click', () => {
      void this.controller
        .exportAs(this.exportSelect.value as TargetDialect)
        .then((code) => {
          if (code !== null) this.codeText.value = code;
        });
    });
    const controls = el('div', 'code-controls');
    controls.appendChild(this.importSelect);
    controls.appendChild(importBtn);
    controls.appendChild(this.exportSelect);
    controls.appendChild(exportBtn);
    codePanel.appendChild(controls);
    codePanel.appendChild(this.codeText);
    this.root.appendChild(codePanel);
    this.root.appendChild(this.toastBox);
  }

  setExamples(names: string[]): void {
    this.exampleSelect.textContent = '';
    for (const name of names) {
      this.exampleSelect.appendChild(el('option', undefined, name));
    }
  }

  private selectGate(name: string): void {
    const entry = PALETTE.find((g) => g.name === name);
    if (!entry) return;
    let params: number[] = [];
    if (entry.params > 0) {
      const raw =
        typeof window !== 'undefined' && window.prompt
          ? window.prompt(`${name} angle in radians`, (Math.PI / 2).toString())
          : null;
      const angle = raw === null || raw === '' ? Math.PI / 2 : Number(raw);
      if (Number.isNaN(angle)) return;
      params = new Array(entry.params).fill(angle);
    }
    this.selected = { gate: name, params, firstQubit: null };
    this.renderPaletteSelection();
    this.renderStatus();
  }

  private renderPaletteSelection(): void {
    for (const child of Array.from(this.paletteBox.children)) {
      const button = child as HTMLButtonElement;
      button.classList.toggle(
        'selected',
        this.selected !== null && button.dataset.gate === this.selected.gate,
      );
    }
  }

  private renderStatus(): void {
    if (!this.selected) {
      this.statusBox.textContent = 'pick a gate, then click a wire cell; click a placed gate to remove it';
      return;
    }
    const entry = PALETTE.find((g) => g.name === this.selected!.gate)!;
    if (entry.arity === 2 && this.selected.firstQubit !== null) {
      this.statusBox.textContent = `${entry.name}: first wire q${this.selected.firstQubit}, click the second wire`;
    } else if (entry.arity === 2) {
      this.statusBox.textContent = `${entry.name}: click the first wire (control)`;
    } else {
      this.statusBox.textContent = `${entry.name}: click a wire to place`;
    }
  }

  private cellClicked(qubit: number, cell: { opIndex: number } | null): void {
    if (cell) {
      this.controller.removeOp(cell.opIndex);
      return;
    }
    const selected = this.selected;
    if (!selected) return;
    const entry = PALETTE.find((g) => g.name === selected.gate);
    if (!entry) return;
    if (entry.arity === 1) {
      this.controller.placeGate(selected.gate, [qubit], selected.params);
      return;
    }
    if (selected.firstQubit === null) {
      selected.firstQubit = qubit;
      this.renderStatus();
      return;
    }
    if (selected.firstQubit === qubit) return; // same wire: ignore
    const pair = [selected.firstQubit, qubit];
    selected.firstQubit = null;
    this.renderStatus();
    this.controller.placeGate(selected.gate, pair, selected.params);
  }

  renderCircuit(model: CircuitModel): void {
    const grid = model.grid();
    this.gridBox.textContent = '';
    const table = el('table', 'wires');
    for (let q = 0; q < grid.length; q++) {
      const row = el('tr', 'wire');
      row.appendChild(el('th', 'wire-label', `q${q}`));
      grid[q].forEach((cell, column) => {
        const td = el('td', cell ? `cell ${cell.role}` : 'cell empty');
        td.dataset.qubit = String(q);
        td.dataset.column = String(column);
        if (cell) {
          td.dataset.op = String(cell.opIndex);
          td.textContent = cell.label;
        }
        td.addEventListener('click', () =>
          this.cellClicked(q, cell && cell.role !== 'link' ? cell : null),
        );
        row.appendChild(td);
      });
      table.appendChild(row);
    }
    this.gridBox.appendChild(table);
    this.renderStatus();
  }

  renderResult(result: SimResult): void {
    this.histogramBox.textContent = '';
    const entries = Object.entries(result.probabilities).sort(
      (a, b) => a[0].localeCompare(b[0]),
    );
    for (const [bits, p] of entries) {
      const row = el('div', 'bar-row');
      row.dataset.outcome = bits;
      const label = el('span', 'bar-label', bits === '' ? '∅' : bits);
      const bar = el('div', 'bar');
      bar.style.width = `${Math.round(p * 100)}%`;
      const value = el('span', 'bar-value', p.toFixed(6));
      row.appendChild(label);
      row.appendChild(bar);
      row.appendChild(value);
      this.histogramBox.appendChild(row);
    }
    this.inspectorBox.textContent = '';
    if (result.snapshots && result.snapshots.length) {
      const table = el('table', 'chips');
      const n = result.snapshots[0].length;
      for (let q = 0; q < n; q++) {
        const row = el('tr');
        row.appendChild(el('th', 'wire-label', `q${q}`));
        result.snapshots.forEach((column, m) => {
          const p = column[q];
          const td = el('td', 'chip', p.toFixed(2));
          td.dataset.qubit = String(q);
          td.dataset.moment = String(m);
          td.style.background = `rgba(59, 130, 246, ${0.15 + 0.85 * p})`;
          row.appendChild(td);
        });
        table.appendChild(row);
      }
      this.inspectorBox.appendChild(table);
    } else {
      this.inspectorBox.textContent = result.snapshots
        ? 'no snapshot data'
        : 'snapshots unavailable for sampled runs';
    }
  }

  showError(error: ServiceError): void {
    const where =
      error.line !== undefined ? ` (line ${error.line}, column ${error.column ?? 1})` : '';
    const toast = el('div', 'toast', `${error.stage}: ${error.message}${where}`);
    this.toastBox.appendChild(toast);
    setTimeout(() => toast.remove(), 6000);
  }

  setCode(text: string): void {
    this.codeText.value = text;
  }
}
