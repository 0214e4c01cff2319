/**
 * Deterministic force-directed layout.
 *
 * Positions are presentation state only; they never feed back into analysis.
 * Initialization uses a seeded PRNG so the same graph always lands in the
 * same arrangement and screenshots are reproducible.
 */

export interface NodePosition {
  id: string;
  x: number;
  y: number;
}

/** mulberry32: tiny seedable PRNG, good enough for layout jitter. */
export function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  seed?: number;
  linkDistance?: number;
}

export function forceLayout(
  nodeIds: string[],
  edges: [string, string][],
  opts: LayoutOptions,
): NodePosition[] {
  const { width, height } = opts;
  const iterations = opts.iterations ?? 300;
  const linkDistance = opts.linkDistance ?? Math.min(width, height) / 4;
  const rand = mulberry32(opts.seed ?? 1);

  const index = new Map(nodeIds.map((id, i) => [id, i]));
  const xs = nodeIds.map(() => (0.2 + 0.6 * rand()) * width);
  const ys = nodeIds.map(() => (0.2 + 0.6 * rand()) * height);
  const links = edges
    .filter(([a, b]) => index.has(a) && index.has(b))
    .map(([a, b]) => [index.get(a)!, index.get(b)!] as const);

  const repulsion = linkDistance * linkDistance;
  for (let iter = 0; iter < iterations; iter++) {
    const temp = 0.1 * Math.min(width, height) * (1 - iter / iterations);
    const fx = nodeIds.map(() => 0);
    const fy = nodeIds.map(() => 0);
    for (let i = 0; i < nodeIds.length; i++) {
      for (let j = i + 1; j < nodeIds.length; j++) {
        let dx = xs[i] - xs[j];
        let dy = ys[i] - ys[j];
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          // deterministic nudge for coincident nodes
          dx = 1e-3 * (i - j);
          dy = 1e-3;
          d2 = dx * dx + dy * dy;
        }
        const f = repulsion / d2;
        fx[i] += dx * f * 0.01;
        fy[i] += dy * f * 0.01;
        fx[j] -= dx * f * 0.01;
        fy[j] -= dy * f * 0.01;
      }
    }
    for (const [a, b] of links) {
      const dx = xs[b] - xs[a];
      const dy = ys[b] - ys[a];
      const dist = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const f = (dist - linkDistance) / dist;
      fx[a] += dx * f * 0.05;
      fy[a] += dy * f * 0.05;
      fx[b] -= dx * f * 0.05;
      fy[b] -= dy * f * 0.05;
    }
    for (let i = 0; i < nodeIds.length; i++) {
      const mag = Math.sqrt(fx[i] * fx[i] + fy[i] * fy[i]) || 1e-9;
      const step = Math.min(mag, temp);
      xs[i] += (fx[i] / mag) * step;
      ys[i] += (fy[i] / mag) * step;
      xs[i] = Math.max(30, Math.min(width - 30, xs[i]));
      ys[i] = Math.max(30, Math.min(height - 30, ys[i]));
    }
  }
  return nodeIds.map((id, i) => ({ id, x: xs[i], y: ys[i] }));
}
