/**
 * SVG rendering of the causal graph.
 *
 * Nodes are laid out by the seeded force layout and draggable; edges can be
 * removed by clicking them and added by shift-clicking two nodes in turn.
 * All mutations go through the store, which owns the optimistic-edit and
 * rollback discipline.
 */

import { forceLayout, NodePosition } from "./layout";
import { GraphView, LoopStore } from "./state";

const SVG_NS = "http://www.w3.org/2000/svg";

const EDGE_COLORS: Record<string, string> = {
  supported: "#4a5568",
  unsupported: "#e53e3e",
  pending: "#a0aec0",
};

export class GraphCanvas {
  private positions = new Map<string, NodePosition>();
  private layoutKey = "";
  private pendingSource: string | null = null;

  constructor(
    private readonly root: SVGSVGElement,
    private readonly store: LoopStore,
    private readonly width = 860,
    private readonly height = 520,
  ) {
    root.setAttribute("viewBox", `0 0 ${width} ${height}`);
  }

  render(graph: GraphView | null): void {
    this.root.replaceChildren();
    if (!graph || graph.variables.length === 0) {
      const text = document.createElementNS(SVG_NS, "text");
      text.setAttribute("x", String(this.width / 2));
      text.setAttribute("y", String(this.height / 2));
      text.setAttribute("text-anchor", "middle");
      text.setAttribute("class", "empty-state");
      text.textContent = "No graph loaded — post one to the service to begin.";
      this.root.append(text);
      return;
    }
    this.ensureLayout(graph);
    this.drawArrowheadDefs();
    for (const edge of graph.edges) this.drawEdge(edge.source, edge.target, edge.status);
    for (const v of graph.variables) this.drawNode(v.name, v.levels.length);
  }

  /** Recompute positions only when the node set changes, so edits keep the
   * arrangement stable. The layout seed is fixed for reproducibility. */
  private ensureLayout(graph: GraphView): void {
    const names = graph.variables.map((v) => v.name);
    const key = names.join("|");
    if (key === this.layoutKey) return;
    const edges = graph.edges.map((e) => [e.source, e.target] as [string, string]);
    const placed = forceLayout(names, edges, {
      width: this.width,
      height: this.height,
      seed: 42,
    });
    this.positions = new Map(placed.map((p) => [p.id, p]));
    this.layoutKey = key;
  }

  private drawArrowheadDefs(): void {
    const defs = document.createElementNS(SVG_NS, "defs");
    for (const [status, color] of Object.entries(EDGE_COLORS)) {
      const marker = document.createElementNS(SVG_NS, "marker");
      marker.setAttribute("id", `arrow-${status}`);
      marker.setAttribute("viewBox", "0 0 10 10");
      marker.setAttribute("refX", "9");
      marker.setAttribute("refY", "5");
      marker.setAttribute("markerWidth", "7");
      marker.setAttribute("markerHeight", "7");
      marker.setAttribute("orient", "auto-start-reverse");
      const path = document.createElementNS(SVG_NS, "path");
      path.setAttribute("d", "M 0 0 L 10 5 L 0 10 z");
      path.setAttribute("fill", color);
      marker.append(path);
      defs.append(marker);
    }
    this.root.append(defs);
  }

  private drawEdge(source: string, target: string, status: string): void {
    const a = this.positions.get(source);
    const b = this.positions.get(target);
    if (!a || !b) return;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const dist = Math.sqrt(dx * dx + dy * dy) || 1;
    const trim = 26 / dist;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x + dx * trim));
    line.setAttribute("y1", String(a.y + dy * trim));
    line.setAttribute("x2", String(b.x - dx * trim));
    line.setAttribute("y2", String(b.y - dy * trim));
    line.setAttribute("stroke", EDGE_COLORS[status] ?? EDGE_COLORS.supported);
    line.setAttribute("stroke-width", status === "unsupported" ? "3" : "1.8");
    line.setAttribute("marker-end", `url(#arrow-${status})`);
    line.setAttribute("class", "edge");
    line.dataset.edge = `${source}->${target}`;
    line.addEventListener("click", () => {
      void this.store.removeEdge(source, target);
    });
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `${source} -> ${target} (click to remove)`;
    line.append(title);
    this.root.append(line);
  }

  private drawNode(name: string, levelCount: number): void {
    const pos = this.positions.get(name);
    if (!pos) return;
    const group = document.createElementNS(SVG_NS, "g");
    group.setAttribute("class", "node");
    group.dataset.node = name;
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(pos.x));
    circle.setAttribute("cy", String(pos.y));
    circle.setAttribute("r", "22");
    circle.setAttribute("fill", this.pendingSource === name ? "#bee3f8" : "#edf2f7");
    circle.setAttribute("stroke", "#2d3748");
    const label = document.createElementNS(SVG_NS, "text");
    label.setAttribute("x", String(pos.x));
    label.setAttribute("y", String(pos.y - 28));
    label.setAttribute("text-anchor", "middle");
    label.setAttribute("class", "node-label");
    label.textContent = name;
    const sub = document.createElementNS(SVG_NS, "text");
    sub.setAttribute("x", String(pos.x));
    sub.setAttribute("y", String(pos.y + 4));
    sub.setAttribute("text-anchor", "middle");
    sub.setAttribute("class", "node-sub");
    sub.textContent = `${levelCount}`;
    group.append(circle, label, sub);
    group.addEventListener("click", (ev: MouseEvent) => {
      if (!ev.shiftKey) return;
      if (this.pendingSource === null) {
        this.pendingSource = name;
        circle.setAttribute("fill", "#bee3f8");
      } else if (this.pendingSource !== name) {
        const source = this.pendingSource;
        this.pendingSource = null;
        void this.store.addEdge(source, name);
      }
    });
    this.attachDrag(group, pos);
    this.root.append(group);
  }

  private attachDrag(group: SVGGElement, pos: NodePosition): void {
    let dragging = false;
    group.addEventListener("pointerdown", (ev: PointerEvent) => {
      if (ev.shiftKey) return;
      dragging = true;
      group.setPointerCapture(ev.pointerId);
    });
    group.addEventListener("pointermove", (ev: PointerEvent) => {
      if (!dragging) return;
      const rect = this.root.getBoundingClientRect();
      pos.x = ((ev.clientX - rect.left) / rect.width) * this.width;
      pos.y = ((ev.clientY - rect.top) / rect.height) * this.height;
      this.render(this.store.getState().graph);
    });
    group.addEventListener("pointerup", () => {
      dragging = false;
    });
  }
}
