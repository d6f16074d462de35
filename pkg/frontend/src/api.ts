/**
 * Thin typed client for the qbridge service endpoints.
 */
import type {
  CircuitIR,
  ExampleEntry,
  ServiceError,
  SimResult,
  SourceDialect,
  TargetDialect,
} from './types.js';

export class ApiError extends Error {
  readonly detail: ServiceError;
  readonly status: number;

  constructor(status: number, detail: ServiceError) {
    super(detail.message);
    this.status = status;
    this.detail = detail;
  }
}

export interface SimulateRequest {
  ir?: CircuitIR;
  dialect?: SourceDialect;
  source?: string;
  shots?: number;
  seed?: number;
  snapshots?: boolean;
}

/** what the controller needs from the service; mocked in tests */
export interface DesignerService {
  examples(): Promise<ExampleEntry[]>;
  parse(request: { dialect?: string; source?: string; ir?: CircuitIR }): Promise<CircuitIR>;
  emit(ir: CircuitIR, target: TargetDialect): Promise<string>;
  convert(from: string | undefined, to: TargetDialect, source: string): Promise<string>;
  simulate(request: SimulateRequest, signal?: AbortSignal): Promise<SimResult>;
}

export class ServiceClient implements DesignerService {
  constructor(private readonly baseUrl: string) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { 'Content-Type': 'application/json' },
      body: body === undefined ? undefined : JSON.stringify(body),
      signal,
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload as ServiceError);
    }
    return payload as T;
  }

  health(): Promise<{ status: string; version: string }> {
    return this.request('GET', '/health');
  }

  examples(): Promise<ExampleEntry[]> {
    return this.request('GET', '/examples');
  }

  parse(request: { dialect?: string; source?: string; ir?: CircuitIR }): Promise<CircuitIR> {
    return this.request('POST', '/parse', request);
  }

  async emit(ir: CircuitIR, target: TargetDialect): Promise<string> {
    const body = await this.request<{ code: string }>('POST', '/emit', { ir, target });
    return body.code;
  }

  async convert(
    from: string | undefined,
    to: TargetDialect,
    source: string,
  ): Promise<string> {
    const payload: Record<string, string> = { to, source };
    if (from) payload['from'] = from;
    const body = await this.request<{ code: string }>('POST', '/convert', payload);
    return body.code;
  }

  simulate(request: SimulateRequest, signal?: AbortSignal): Promise<SimResult> {
    return this.request('POST', '/simulate', request, signal);
  }
}
