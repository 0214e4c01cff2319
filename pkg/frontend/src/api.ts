/**
 * Typed client for the causeway analysis service (/api/v1).
 *
 * The UI performs no analytical computation: every number it shows comes out
 * of one of these responses, and every analytical response carries a
 * report_id plus provenance (graph version, config digest, tool version).
 */

export interface VariableDoc {
  name: string;
  levels: string[];
  reference_level: string;
}

export interface GraphDoc {
  variables: VariableDoc[];
  edges: [string, string][];
}

export interface GraphResponse {
  graph_version: number;
  active_version: number;
  graph_id: string;
  tool_version: string;
  graph: GraphDoc;
}

export interface ClaimResult {
  x: string;
  y: string;
  given: string[];
  statistic: number;
  dof: number;
  p_value: number;
  verdict: string;
  alpha: number;
  flags: string[];
}

export interface EdgeCheckDoc {
  edge: [string, string];
  unsupported: boolean;
  test: ClaimResult;
}

export interface ImplicationsResponse {
  report_id: string;
  format: string;
  graph_id: string;
  graph_version: number;
  alpha: number;
  verdict: string;
  claims: ClaimResult[];
  edges: EdgeCheckDoc[];
  proposals: { action: string; edge: [string, string]; p_value: number }[];
  tool_version: string;
}

export interface AdjustmentSetsResponse {
  report_id: string;
  graph_id: string;
  graph_version: number;
  treatment: string;
  outcome: string;
  backdoor_trails: string[];
  minimal_sets: string[][];
  tool_version: string;
}

export interface EstimateDoc {
  treatment: string;
  outcome: string;
  contrast: string;
  odds_ratio: number;
  risk_ratio: number;
  interval_95: [number, number];
  measure: string;
  adjustment: string[];
  method: string;
  diagnostics: Record<string, unknown>;
}

export interface EstimateResponse {
  report_id: string;
  graph_id: string;
  graph_version: number;
  config_digest: string;
  adjustment_certification: string;
  rejection_reason?: string;
  estimates: EstimateDoc[];
  unadjusted?: EstimateDoc[];
  tool_version: string;
}

export interface EstimateRequest {
  treatment: string;
  outcome: string;
  adjustment?: string[] | null;
  success?: string[];
  measure?: string;
  seed?: number;
  replicates?: number;
  override_adjustment?: boolean;
  compare_unadjusted?: boolean;
  version?: number;
}

export interface ApiError {
  error: string;
  message: string;
}

export class ServiceError extends Error {
  readonly kind: string;
  readonly status: number;

  constructor(kind: string, message: string, status: number) {
    super(message);
    this.kind = kind;
    this.status = status;
  }
}

async function parseError(res: Response): Promise<never> {
  let kind = "HttpError";
  let message = `${res.status} ${res.statusText}`;
  try {
    const body = await res.json();
    if (typeof body.error === "string") kind = body.error;
    if (typeof body.message === "string") message = body.message;
    else if (typeof body.detail === "string") message = body.detail;
  } catch {
    // non-JSON body; keep the status line
  }
  throw new ServiceError(kind, message, res.status);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/v1${path}`);
    if (!res.ok) await parseError(res);
    return res.json() as Promise<T>;
  }

  private async post<T>(path: string, body: unknown): Promise<T> {
    const res = await this.fetchImpl(`${this.baseUrl}/api/v1${path}`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!res.ok) await parseError(res);
    return res.json() as Promise<T>;
  }

  getGraph(version?: number): Promise<GraphResponse> {
    const suffix = version === undefined ? "" : `?version=${version}`;
    return this.get(`/graph${suffix}`);
  }

  addEdge(source: string, target: string): Promise<GraphResponse> {
    return this.post(`/graph/edits`, { op: "add-edge", source, target });
  }

  removeEdge(source: string, target: string): Promise<GraphResponse> {
    return this.post(`/graph/edits`, { op: "remove-edge", source, target });
  }

  getImplications(alpha?: number, version?: number): Promise<ImplicationsResponse> {
    const params = new URLSearchParams();
    if (alpha !== undefined) params.set("alpha", String(alpha));
    if (version !== undefined) params.set("version", String(version));
    const qs = params.toString();
    return this.get(`/implications${qs ? `?${qs}` : ""}`);
  }

  getAdjustmentSets(treatment: string, outcome: string): Promise<AdjustmentSetsResponse> {
    const params = new URLSearchParams({ treatment, outcome });
    return this.get(`/adjustment-sets?${params}`);
  }

  estimate(req: EstimateRequest): Promise<EstimateResponse> {
    return this.post(`/estimate`, req);
  }

  getReport(reportId: string): Promise<Record<string, unknown>> {
    return this.get(`/reports/${reportId}`);
  }
}
