/**
 * Designer controller: owns the circuit model and the edit/simulate loop.
 *
 * Every edit schedules a debounced /simulate call (150 ms); responses carry a
 * sequence number and only the newest issued request may render, so a slow
 * response can never overwrite a newer edit's histogram.
 */
import type { DesignerService, SimulateRequest } from './api.js';
import { CircuitModel } from './model.js';
import type { CircuitIR, ServiceError, SimResult, TargetDialect } from './types.js';

export const DEBOUNCE_MS = 150;

export interface ControllerEvents {
  onCircuitChanged(model: CircuitModel): void;
  onResult(result: SimResult): void;
  onError(error: ServiceError): void;
}

function toServiceError(err: unknown): ServiceError {
  const detail = (err as { detail?: ServiceError }).detail;
  if (detail && typeof detail.message === 'string') return detail;
  return { stage: 'request', message: err instanceof Error ? err.message : String(err) };
}

export class DesignerController {
  readonly model: CircuitModel;
  shots = 0;
  lastResult: SimResult | null = null;

  private seq = 0;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private inflight: AbortController | null = null;

  constructor(
    private readonly service: DesignerService,
    private readonly events: ControllerEvents,
    private readonly debounceMs: number = DEBOUNCE_MS,
  ) {
    this.model = new CircuitModel();
  }

  /** edit entry points ------------------------------------------------- */

  placeGate(name: string, qubits: number[], params: number[] = []): void {
    this.model.placeGate(name, qubits, params);
    this.circuitEdited();
  }

  removeOp(opIndex: number): void {
    this.model.removeOp(opIndex);
    this.circuitEdited();
  }

  setQubitCount(count: number): void {
    this.model.setQubitCount(count);
    this.circuitEdited();
  }

  setShots(shots: number): void {
    this.shots = Math.max(0, shots);
    this.circuitEdited();
  }

  newCircuit(qubits: number): void {
    this.model.setCircuit(CircuitModel.emptyIr(qubits));
    this.circuitEdited();
  }

  private circuitEdited(): void {
    this.events.onCircuitChanged(this.model);
    this.scheduleSimulate();
  }

  /** the debounced live loop ------------------------------------------- */

  private scheduleSimulate(): void {
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.simulateNow();
    }, this.debounceMs);
  }

  async simulateNow(): Promise<void> {
    const mySeq = ++this.seq;
    this.inflight?.abort(); // keep at most one request in flight
    const abort = typeof AbortController !== 'undefined' ? new AbortController() : null;
    this.inflight = abort;
    const request: SimulateRequest = {
      ir: this.model.circuit,
      snapshots: true,
    };
    if (this.shots > 0) request.shots = this.shots;
    try {
      const result = await this.service.simulate(request, abort?.signal);
      if (mySeq !== this.seq) return; // a newer edit superseded this request
      this.lastResult = result;
      this.events.onResult(result);
    } catch (err) {
      if (mySeq !== this.seq) return; // aborted/stale: silently dropped
      this.events.onError(toServiceError(err)); // last good result stays up
    }
  }

  /** import / export ----------------------------------------------------- */

  async loadExample(name: string): Promise<void> {
    const examples = await this.service.examples();
    const entry = examples.find((e) => e.name === name);
    if (!entry) {
      this.events.onError({ stage: 'request', message: `no example ${name}` });
      return;
    }
    await this.importSource(entry.dialect, entry.source);
  }

  async importSource(dialect: string | undefined, source: string): Promise<void> {
    try {
      const ir = await this.service.parse(
        dialect ? { dialect, source } : { source },
      );
      this.model.setCircuit(ir);
      this.events.onCircuitChanged(this.model);
      await this.simulateNow();
    } catch (err) {
      this.events.onError(toServiceError(err));
    }
  }

  async importIr(ir: CircuitIR): Promise<void> {
    // round through /parse so the service stays the source of truth
    try {
      const parsed = await this.service.parse({ ir });
      this.model.setCircuit(parsed);
      this.events.onCircuitChanged(this.model);
      await this.simulateNow();
    } catch (err) {
      this.events.onError(toServiceError(err));
    }
  }

  async exportAs(target: TargetDialect): Promise<string | null> {
    try {
      return await this.service.emit(this.model.circuit, target);
    } catch (err) {
      this.events.onError(toServiceError(err));
      return null;
    }
  }
}
