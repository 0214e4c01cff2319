"""Report rendering: human-readable tables plus versioned structured documents.

Every document embeds the graph fingerprint, a config digest, and the tool
version so results are traceable to exactly what produced them. Rendering is
deterministic: identical inputs yield byte-identical output.
"""
from __future__ import annotations

import json

import causeway
from causeway.citest import ImplicationReport, suggest_edits
from causeway.dagfile import fingerprint
from causeway.effects import EffectEstimate, EstimateConfig
from causeway.graph import AdjustmentSet, CausalDag, backdoor_trails


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    def fmt(row):
        return "  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip()
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines += [fmt(r) for r in rows]
    return "\n".join(lines)


def render_implications(report: ImplicationReport) -> str:
    rows = []
    for r in report.claim_results:
        rows.append([str(r.claim), f"{r.p_value:.4g}", r.verdict, ",".join(r.flags)])
    parts = [
        f"Conditional independence tests (alpha={report.alpha}, graph {report.graph_id})",
        _table(rows, ["Claim", "p-value", "Verdict", "Flags"]),
        "",
        f"Edges unsupported by the data: {len(report.unsupported_edges)}",
    ]
    for proposal in suggest_edits(report):
        parts.append(f"  proposal: {proposal}")
    parts.append(f"Overall verdict: {report.verdict}")
    return "\n".join(parts) + "\n"


def implication_doc(report: ImplicationReport) -> dict:
    doc = report.to_dict()
    doc["tool_version"] = causeway.__version__
    doc["proposals"] = [
        {"action": p.action, "edge": list(p.edge), "p_value": p.evidence.p_value}
        for p in suggest_edits(report)
    ]
    return doc


def render_adjustments(g: CausalDag, sets: list[AdjustmentSet], treatment: str, outcome: str) -> str:
    trails = backdoor_trails(g, treatment, outcome)
    parts = [f"Back-door analysis for ({treatment}, {outcome}), graph {fingerprint(g)}"]
    parts.append(f"Back-door trails: {len(trails)}")
    for t in trails:
        parts.append(f"  {t}")
    if not sets:
        parts.append("No valid adjustment set exists.")
    elif sets[0].variables == ():
        parts.append("Minimal adjustment sets: {} (no adjustment needed)")
        for s in sets[1:]:
            parts.append(f"  also minimal: {s}")
    else:
        parts.append("Minimal adjustment sets:")
        for s in sets:
            parts.append(f"  {s}")
    return "\n".join(parts) + "\n"


def adjustment_doc(g: CausalDag, sets: list[AdjustmentSet], treatment: str, outcome: str) -> dict:
    return {
        "format": "causeway-adjustment-report v1",
        "tool_version": causeway.__version__,
        "graph_id": fingerprint(g),
        "treatment": treatment,
        "outcome": outcome,
        "backdoor_trails": [str(t) for t in backdoor_trails(g, treatment, outcome)],
        "minimal_sets": [sorted(s.variables) for s in sets],
    }


def render_estimates(
    estimates: list[EffectEstimate], comparison: list[EffectEstimate] | None = None
) -> str:
    measure_label = {"rr": "risk ratio", "or": "odds ratio"}
    rows = []
    for e in estimates:
        rows.append([
            e.treatment, f"{e.level} vs {e.reference}",
            f"{e.point:.3f}", f"{e.interval_95[0]:.3f} -- {e.interval_95[1]:.3f}",
            f"{e.odds_ratio:.3f}", f"{e.risk_ratio:.3f}", e.method,
        ])
    header = ["Treatment", "Contrast", "Estimate", "95% interval", "OR", "RR", "Method"]
    parts = []
    if estimates:
        parts.append(
            f"Average causal effect estimates (headline measure: "
            f"{measure_label[estimates[0].measure]})"
        )
        adj = ", ".join(estimates[0].adjustment) or "none"
        parts.append(f"Adjustment set: {{{adj}}}" if estimates[0].adjustment else "Adjustment set: {} (empty)")
    parts.append(_table(rows, header))
    if comparison:
        parts.append("")
        parts.append("Adjusted vs unadjusted comparison:")
        by_level = {e.level: e for e in comparison}
        rows2 = []
        for e in estimates:
            u = by_level.get(e.level)
            rows2.append([
                e.treatment, f"{e.level} vs {e.reference}",
                f"{e.point:.3f}", f"{u.point:.3f}" if u else "-",
            ])
        parts.append(_table(rows2, ["Treatment", "Contrast", "Adjusted", "Unadjusted"]))
    return "\n".join(parts) + "\n"


def estimation_doc(
    estimates: list[EffectEstimate],
    config: EstimateConfig,
    comparison: list[EffectEstimate] | None = None,
    certification: str | None = None,
) -> dict:
    doc = {
        "format": "causeway-estimation-report v1",
        "tool_version": causeway.__version__,
        "graph_id": fingerprint(config.graph) if config.graph is not None else None,
        "config_digest": config.config_digest(),
        "adjustment_certification": certification,
        "estimates": [e.to_dict() for e in estimates],
    }
    if comparison is not None:
        doc["unadjusted"] = [e.to_dict() for e in comparison]
    return doc


def to_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
