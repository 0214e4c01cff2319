import { describe, expect, it } from "vitest";

import { forceLayout, mulberry32 } from "../src/layout";

describe("mulberry32", () => {
  it("is deterministic for a given seed", () => {
    const a = mulberry32(7);
    const b = mulberry32(7);
    for (let i = 0; i < 100; i++) expect(a()).toBe(b());
  });

  it("yields values in [0, 1) and differs across seeds", () => {
    const a = mulberry32(1);
    const b = mulberry32(2);
    const xs = Array.from({ length: 50 }, () => a());
    for (const x of xs) {
      expect(x).toBeGreaterThanOrEqual(0);
      expect(x).toBeLessThan(1);
    }
    expect(xs).not.toEqual(Array.from({ length: 50 }, () => b()));
  });
});

describe("forceLayout", () => {
  const nodes = ["A", "B", "C", "D"];
  const edges: [string, string][] = [
    ["A", "B"],
    ["B", "C"],
    ["A", "D"],
  ];
  const opts = { width: 800, height: 600, seed: 9 };

  it("is deterministic for the same graph, seed, and options", () => {
    expect(forceLayout(nodes, edges, opts)).toEqual(forceLayout(nodes, edges, opts));
  });

  it("keeps every node inside the canvas with a margin", () => {
    for (const p of forceLayout(nodes, edges, opts)) {
      expect(p.x).toBeGreaterThanOrEqual(30);
      expect(p.x).toBeLessThanOrEqual(770);
      expect(p.y).toBeGreaterThanOrEqual(30);
      expect(p.y).toBeLessThanOrEqual(570);
    }
  });

  it("separates coincident starting positions", () => {
    const placed = forceLayout(["X", "Y"], [], { ...opts, seed: 3 });
    const dx = placed[0].x - placed[1].x;
    const dy = placed[0].y - placed[1].y;
    expect(Math.sqrt(dx * dx + dy * dy)).toBeGreaterThan(10);
  });

  it("ignores edges that mention unknown nodes", () => {
    const placed = forceLayout(["A"], [["A", "Ghost"]], opts);
    expect(placed).toHaveLength(1);
  });
});
