/**
 * Result panels: implication checks and effect estimates.
 *
 * Every number shown here is copied verbatim from a service response and the
 * panel is stamped with that response's report id (data-report-id on the
 * panel plus a visible "report …" chip), so any displayed value can be traced
 * back to the exact server report that produced it. Panels computed under an
 * older graph version get a "stale" badge instead of being silently reused.
 */

import { ClaimResult, EstimateDoc, EstimateResponse, ImplicationsResponse } from "./api";
import { LoopStore, PanelResult, violatedClaims } from "./state";

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

function claimLabel(c: ClaimResult): string {
  const given = c.given.length ? ` | ${c.given.join(", ")}` : "";
  return `${c.x} _||_ ${c.y}${given}`;
}

function pValue(p: number): string {
  return p < 1e-4 ? p.toExponential(2) : p.toFixed(4);
}

function header(
  panel: HTMLElement,
  title: string,
  reportId: string,
  version: number,
  stale: boolean,
): void {
  const head = el("div", "panel-head");
  head.append(el("h2", undefined, title));
  const chip = el("span", "report-chip", `report ${reportId}`);
  chip.dataset.reportId = reportId;
  head.append(chip);
  head.append(el("span", "version-chip", `graph v${version}`));
  if (stale) head.append(el("span", "stale-badge", "stale — re-run after edit"));
  panel.append(head);
}

export function renderImplicationsPanel(
  panel: HTMLElement,
  result: PanelResult<ImplicationsResponse> | null,
  store: LoopStore,
): void {
  panel.replaceChildren();
  if (!result) {
    panel.append(el("p", "empty-state", "No implication report yet."));
    return;
  }
  const data = result.data;
  header(panel, "Implied independencies", result.reportId, data.graph_version, store.isStale(result));
  panel.dataset.reportId = result.reportId;

  const violated = violatedClaims(data);
  const summary = el(
    "p",
    data.verdict === "Consistent" ? "verdict-ok" : "verdict-bad",
    `${data.verdict} — ${violated.length} of ${data.claims.length} implied ` +
      `independencies violated at alpha=${data.alpha}`,
  );
  summary.dataset.reportId = result.reportId;
  panel.append(summary);

  if (violated.length) {
    panel.append(el("h3", undefined, "Violated claims"));
    panel.append(claimList(violated, "claim-violated", result.reportId));
  }
  const held = data.claims.filter((c) => c.verdict !== "Dependent");
  const holdTitle = el("h3", undefined, `Holding claims (${held.length})`);
  panel.append(holdTitle);
  const details = el("details");
  details.append(el("summary", undefined, "show"));
  details.append(claimList(held, "claim-held", result.reportId));
  panel.append(details);

  const unsupported = data.edges.filter((e) => e.unsupported);
  if (unsupported.length) {
    panel.append(el("h3", undefined, "Edges unsupported by the data"));
    const ul = el("ul", "edge-list");
    for (const e of unsupported) {
      const li = el(
        "li",
        "edge-unsupported",
        `${e.edge[0]} -> ${e.edge[1]} (p=${pValue(e.test.p_value)})`,
      );
      li.dataset.reportId = result.reportId;
      ul.append(li);
    }
    panel.append(ul);
  }
  for (const p of data.proposals) {
    panel.append(
      el(
        "p",
        "proposal",
        `proposal: ${p.action} ${p.edge[0]} -> ${p.edge[1]} (p=${pValue(p.p_value)})`,
      ),
    );
  }
}

function claimList(claims: ClaimResult[], className: string, reportId: string): HTMLElement {
  const ul = el("ul", "claim-list");
  for (const c of claims) {
    const flags = c.flags.length ? ` [${c.flags.join(", ")}]` : "";
    const li = el(
      "li",
      className,
      `${claimLabel(c)} — ${c.verdict}, p=${pValue(c.p_value)}${flags}`,
    );
    li.dataset.reportId = reportId;
    ul.append(li);
  }
  return ul;
}

export function renderEstimatePanel(
  panel: HTMLElement,
  result: PanelResult<EstimateResponse> | null,
  store: LoopStore,
): void {
  panel.replaceChildren();
  if (!result) {
    panel.append(el("p", "empty-state", "No estimate yet."));
    return;
  }
  const data = result.data;
  header(panel, "Effect estimate", result.reportId, data.graph_version, store.isStale(result));
  panel.dataset.reportId = result.reportId;
  panel.append(el("p", "digest", `config ${data.config_digest}`));

  const certified = data.adjustment_certification === "backdoor-certified";
  const cert = el(
    "p",
    certified ? "cert-ok" : "cert-bad",
    `Adjustment: ${data.adjustment_certification}`,
  );
  cert.dataset.reportId = result.reportId;
  panel.append(cert);
  if (data.rejection_reason) {
    // The server's explanation of why the chosen set fails the back-door
    // criterion is shown verbatim.
    const reason = el("p", "rejection-reason", data.rejection_reason);
    reason.dataset.reportId = result.reportId;
    panel.append(reason);
  }
  if (data.estimates.length) {
    const adj = data.estimates[0].adjustment;
    panel.append(
      el("p", "adjustment-set", `Adjustment set: {${adj.join(", ")}}`),
    );
  }
  panel.append(estimateTable(data.estimates, data.unadjusted, result.reportId));
}

function estimateTable(
  estimates: EstimateDoc[],
  unadjusted: EstimateDoc[] | undefined,
  reportId: string,
): HTMLTableElement {
  const table = el("table", "estimate-table");
  const head = el("tr");
  const columns = ["Contrast", "Measure", "Adjusted", "95% interval"];
  if (unadjusted) columns.push("Unadjusted");
  for (const c of columns) head.append(el("th", undefined, c));
  table.append(head);
  const byContrast = new Map((unadjusted ?? []).map((e) => [e.contrast, e]));
  for (const e of estimates) {
    const point = e.measure === "or" ? e.odds_ratio : e.risk_ratio;
    const row = el("tr");
    row.dataset.reportId = reportId;
    row.append(el("td", undefined, e.contrast));
    row.append(el("td", undefined, e.measure.toUpperCase()));
    row.append(el("td", "estimate-point", point.toFixed(3)));
    row.append(
      el("td", undefined, `[${e.interval_95[0].toFixed(3)}, ${e.interval_95[1].toFixed(3)}]`),
    );
    if (unadjusted) {
      const u = byContrast.get(e.contrast);
      const up = u ? (u.measure === "or" ? u.odds_ratio : u.risk_ratio) : null;
      row.append(el("td", "estimate-unadjusted", up === null ? "-" : up.toFixed(3)));
    }
    table.append(row);
  }
  return table;
}

export function renderErrorBar(bar: HTMLElement, error: string | null): void {
  bar.textContent = error ?? "";
  bar.classList.toggle("visible", error !== null);
}
