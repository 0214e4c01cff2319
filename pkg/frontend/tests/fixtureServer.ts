/**
 * Stateful fake fetch backed by JSON fixtures captured from the real analysis
 * service for the planted scenario: the reference graph plus one extra edge
 * (1stConcernWhileStuckInTraffic -> RouteChoice) that the data, sampled from
 * the reference model without that edge, does not support.
 */

import errorCycle from "./fixtures/error_cycle.json";
import estimateCertified from "./fixtures/estimate_certified.json";
import estimateOverride from "./fixtures/estimate_override.json";
import graphAfterRemove from "./fixtures/graph_after_remove.json";
import graphPilot from "./fixtures/graph_pilot.json";
import implicationsAfterRemove from "./fixtures/implications_after_remove.json";
import implicationsPilot from "./fixtures/implications_pilot.json";

export const PLANTED_EDGE: [string, string] = [
  "1stConcernWhileStuckInTraffic",
  "RouteChoice",
];

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** Serves version 1 (planted edge present) until the planted edge is removed,
 * then version 2. Any add-edge request is rejected with the captured cycle
 * error, which exercises the rollback path. */
export class FixtureServer {
  version = 1;
  readonly requests: { method: string; url: string; body?: unknown }[] = [];

  readonly fetch: typeof fetch = async (input, init) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    this.requests.push({ method, url, body });

    if (url.includes("/api/v1/graph/edits")) {
      if (
        body.op === "remove-edge" &&
        body.source === PLANTED_EDGE[0] &&
        body.target === PLANTED_EDGE[1]
      ) {
        this.version = 2;
        return json(graphAfterRemove);
      }
      return json(errorCycle, 409);
    }
    if (url.includes("/api/v1/graph")) {
      return json(this.version === 1 ? graphPilot : graphAfterRemove);
    }
    if (url.includes("/api/v1/implications")) {
      return json(this.version === 1 ? implicationsPilot : implicationsAfterRemove);
    }
    if (url.includes("/api/v1/estimate")) {
      return json(body.override_adjustment ? estimateOverride : estimateCertified);
    }
    return json({ error: "HttpError", message: `unhandled ${url}` }, 404);
  };
}

export {
  estimateCertified,
  estimateOverride,
  graphAfterRemove,
  graphPilot,
  implicationsAfterRemove,
  implicationsPilot,
};
