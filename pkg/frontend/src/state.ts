/**
 * Client-side store for the refinement loop.
 *
 * Holds the graph view model plus the latest implication and estimation
 * results. Graph edits render optimistically and roll back exactly to the
 * prior view when the server rejects them. Every analytical result is kept
 * together with the report id and graph version it was computed under, so
 * the UI can flag stale panels after further edits.
 */

import {
  ApiClient,
  EstimateRequest,
  EstimateResponse,
  GraphDoc,
  GraphResponse,
  ImplicationsResponse,
  ServiceError,
} from "./api";

export type EdgeStatus = "supported" | "unsupported" | "pending";

export interface EdgeView {
  source: string;
  target: string;
  status: EdgeStatus;
}

export interface GraphView {
  version: number;
  graphId: string;
  variables: { name: string; levels: string[] }[];
  edges: EdgeView[];
}

export interface PanelResult<T> {
  data: T;
  reportId: string;
  graphVersion: number;
}

export interface LoopState {
  graph: GraphView | null;
  implications: PanelResult<ImplicationsResponse> | null;
  estimate: PanelResult<EstimateResponse> | null;
  busy: boolean;
  error: string | null;
}

type Listener = (state: LoopState) => void;

function toView(res: GraphResponse): GraphView {
  return {
    version: res.graph_version,
    graphId: res.graph_id,
    variables: res.graph.variables.map((v) => ({ name: v.name, levels: v.levels })),
    edges: res.graph.edges.map(([source, target]) => ({
      source,
      target,
      status: "supported" as EdgeStatus,
    })),
  };
}

export class LoopStore {
  private state: LoopState = {
    graph: null,
    implications: null,
    estimate: null,
    busy: false,
    error: null,
  };
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  getState(): LoopState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private set(patch: Partial<LoopState>): void {
    this.state = { ...this.state, ...patch };
    for (const fn of this.listeners) fn(this.state);
  }

  /** True when a panel was computed under an older graph version. */
  isStale(panel: PanelResult<unknown> | null): boolean {
    return (
      panel !== null &&
      this.state.graph !== null &&
      panel.graphVersion !== this.state.graph.version
    );
  }

  async loadGraph(): Promise<void> {
    this.set({ busy: true, error: null });
    try {
      const res = await this.api.getGraph();
      this.set({ graph: toView(res), busy: false });
    } catch (err) {
      this.set({ busy: false, error: describe(err) });
    }
  }

  /**
   * Optimistic edge removal: the edge disappears immediately; on rejection
   * the exact prior view is restored and the error surfaced.
   */
  async removeEdge(source: string, target: string): Promise<boolean> {
    const before = this.state.graph;
    if (!before) return false;
    const optimistic: GraphView = {
      ...before,
      edges: before.edges.filter((e) => !(e.source === source && e.target === target)),
    };
    this.set({ graph: optimistic, busy: true, error: null });
    try {
      const res = await this.api.removeEdge(source, target);
      this.set({ graph: toView(res), busy: false });
      return true;
    } catch (err) {
      this.set({ graph: before, busy: false, error: describe(err) });
      return false;
    }
  }

  /** Optimistic edge addition with identical rollback discipline. */
  async addEdge(source: string, target: string): Promise<boolean> {
    const before = this.state.graph;
    if (!before) return false;
    const optimistic: GraphView = {
      ...before,
      edges: [...before.edges, { source, target, status: "pending" }],
    };
    this.set({ graph: optimistic, busy: true, error: null });
    try {
      const res = await this.api.addEdge(source, target);
      this.set({ graph: toView(res), busy: false });
      return true;
    } catch (err) {
      this.set({ graph: before, busy: false, error: describe(err) });
      return false;
    }
  }

  async refreshImplications(alpha?: number): Promise<void> {
    this.set({ busy: true, error: null });
    try {
      const data = await this.api.getImplications(alpha);
      this.set({
        implications: {
          data,
          reportId: data.report_id,
          graphVersion: data.graph_version,
        },
        busy: false,
      });
      this.markEdgeSupport(data);
    } catch (err) {
      this.set({ busy: false, error: describe(err) });
    }
  }

  private markEdgeSupport(data: ImplicationsResponse): void {
    const graph = this.state.graph;
    if (!graph || data.graph_version !== graph.version) return;
    const unsupported = new Set(
      data.edges.filter((e) => e.unsupported).map((e) => `${e.edge[0]}->${e.edge[1]}`),
    );
    this.set({
      graph: {
        ...graph,
        edges: graph.edges.map((e) => ({
          ...e,
          status: unsupported.has(`${e.source}->${e.target}`)
            ? "unsupported"
            : "supported",
        })),
      },
    });
  }

  async runEstimate(req: EstimateRequest): Promise<void> {
    this.set({ busy: true, error: null });
    try {
      const data = await this.api.estimate(req);
      this.set({
        estimate: {
          data,
          reportId: data.report_id,
          graphVersion: data.graph_version,
        },
        busy: false,
      });
    } catch (err) {
      this.set({ busy: false, error: describe(err) });
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ServiceError) return `${err.kind}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

export function violatedClaims(data: ImplicationsResponse) {
  return data.claims.filter((c) => c.verdict === "Dependent");
}

export function edgesOf(doc: GraphDoc): [string, string][] {
  return doc.edges;
}
