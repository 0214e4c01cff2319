"""HTTP facade exposing the workflow for scripting and the companion UI.

The service is workspace-stateful: the active graph has a versioned,
append-only edit history (persisted under <workspace>/versions/), while the
dataset is read once from <workspace>/data.csv and never mutated. Analytical
results are cached by (graph version, operation, parameters) and every
response embeds graph version, config digest, and tool version.
"""
from __future__ import annotations

import hashlib
import json
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query, Request
from fastapi.responses import JSONResponse

import causeway
from causeway import dagfile, report, scm
from causeway.citest import test_implications
from causeway.data import DataTable, Schema, load_table
from causeway.effects import EstimateConfig, estimate_effect, unadjusted_estimate
from causeway.errors import CausewayError, CycleDetected, UnknownVariable
from causeway.graph import (
    CausalDag,
    backdoor_rejection_reason,
    minimal_adjustment_sets,
    satisfies_backdoor,
)


class Workspace:
    """Versioned graph history plus the immutable dataset."""

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.versions_dir = self.root / "versions"
        self.lock = threading.Lock()
        self.versions: list[CausalDag] = []
        self.reports: dict[str, dict] = {}
        self._cache: dict[tuple, str] = {}
        self._load()

    def _load(self):
        self.versions_dir.mkdir(parents=True, exist_ok=True)
        stored = sorted(self.versions_dir.glob("*.dag"))
        if stored:
            for path in stored:
                self.versions.append(dagfile.parse(path.read_text("utf-8")).graph())
        else:
            initial = self.root / "graph.dag"
            if initial.exists():
                g = dagfile.parse(initial.read_text("utf-8")).graph()
                self._persist(g)
        data_file = self.root / "data.csv"
        self.table: DataTable | None = None
        if data_file.exists() and self.versions:
            schema = Schema(self.versions[-1].variables)
            self.table = load_table(data_file.read_text("utf-8"), schema)

    def _persist(self, g: CausalDag):
        version = len(self.versions) + 1
        (self.versions_dir / f"{version:04d}.dag").write_text(dagfile.format_graph(g))
        self.versions.append(g)

    @property
    def active_version(self) -> int:
        return len(self.versions)

    def graph_at(self, version: int | None) -> tuple[int, CausalDag]:
        if not self.versions:
            raise HTTPException(404, "no graph loaded; put a graph.dag in the workspace or POST one")
        v = version or self.active_version
        if not 1 <= v <= self.active_version:
            raise HTTPException(404, f"no graph version {v}")
        return v, self.versions[v - 1]

    def require_table(self) -> DataTable:
        if self.table is None:
            raise HTTPException(404, "no dataset loaded; put data.csv in the workspace")
        return self.table

    def store_report(self, doc: dict) -> str:
        blob = json.dumps(doc, sort_keys=True).encode()
        report_id = hashlib.sha256(blob).hexdigest()[:16]
        self.reports[report_id] = doc
        return report_id

    def cached(self, key: tuple, compute) -> tuple[str, dict]:
        if key in self._cache:
            rid = self._cache[key]
            return rid, self.reports[rid]
        doc = compute()
        rid = self.store_report(doc)
        self._cache[key] = rid
        return rid, doc


def _graph_payload(ws: Workspace, version: int, g: CausalDag) -> dict:
    return {
        "graph_version": version,
        "active_version": ws.active_version,
        "graph_id": dagfile.fingerprint(g),
        "tool_version": causeway.__version__,
        "graph": g.to_dict(),
    }


def create_app(workspace_dir: str | Path) -> FastAPI:
    ws = Workspace(workspace_dir)
    app = FastAPI(title="causeway", version=causeway.__version__)

    @app.exception_handler(CausewayError)
    async def causeway_error_handler(request: Request, exc: CausewayError):
        status = 409 if isinstance(exc, CycleDetected) else 400
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.get("/api/v1/graph")
    def get_graph(version: int | None = Query(default=None)):
        v, g = ws.graph_at(version)
        return _graph_payload(ws, v, g)

    @app.post("/api/v1/graph")
    def post_graph(body: dict):
        with ws.lock:
            if "dagfile" in body:
                g = dagfile.parse(body["dagfile"]).graph()
            else:
                g = CausalDag.from_dict(body)
            ws._persist(g)
            return _graph_payload(ws, ws.active_version, g)

    @app.post("/api/v1/graph/edits")
    def post_edit(body: dict):
        with ws.lock:
            _, g = ws.graph_at(None)
            op = body.get("op")
            src, dst = body.get("source"), body.get("target")
            if op == "add-edge":
                g2 = g.with_edge(src, dst)
            elif op == "remove-edge":
                g2 = g.without_edge(src, dst)
            else:
                raise HTTPException(400, f"unknown edit op {op!r}")
            ws._persist(g2)
            return _graph_payload(ws, ws.active_version, g2)

    @app.get("/api/v1/implications")
    def get_implications(
        alpha: float = Query(default=0.01),
        version: int | None = Query(default=None),
    ):
        v, g = ws.graph_at(version)
        t = ws.require_table()

        def compute():
            doc = report.implication_doc(test_implications(g, t, alpha=alpha))
            doc["graph_version"] = v
            return doc

        rid, doc = ws.cached(("implications", v, alpha), compute)
        return {"report_id": rid, **doc}

    @app.get("/api/v1/adjustment-sets")
    def get_adjustment_sets(
        treatment: str, outcome: str, version: int | None = Query(default=None)
    ):
        v, g = ws.graph_at(version)

        def compute():
            sets = minimal_adjustment_sets(g, treatment, outcome)
            doc = report.adjustment_doc(g, sets, treatment, outcome)
            doc["graph_version"] = v
            return doc

        rid, doc = ws.cached(("adjustment-sets", v, treatment, outcome), compute)
        return {"report_id": rid, **doc}

    @app.post("/api/v1/estimate")
    def post_estimate(body: dict):
        v, g = ws.graph_at(body.get("version"))
        t = ws.require_table()
        treatment = body.get("treatment")
        outcome = body.get("outcome")
        if not treatment or not outcome:
            raise HTTPException(400, "treatment and outcome are required")
        config = EstimateConfig(
            graph=g,
            outcome_success=tuple(body["success"]) if body.get("success") else None,
            measure=body.get("measure", "rr"),
            replicates=int(body.get("replicates", 500)),
            seed=int(body.get("seed", 0)),
            override_adjustment=bool(body.get("override_adjustment", False)),
        )
        if body.get("adjustment") is not None:
            adjustment = tuple(body["adjustment"])
        else:
            sets = minimal_adjustment_sets(g, treatment, outcome)
            if not sets:
                raise HTTPException(400, "no valid adjustment set exists")
            adjustment = sets[0].variables
        key = (
            "estimate", v, treatment, outcome, tuple(sorted(adjustment)),
            config.config_digest(), bool(body.get("compare_unadjusted")),
        )

        def compute():
            estimates = estimate_effect(t, treatment, outcome, adjustment, config)
            comparison = None
            if body.get("compare_unadjusted"):
                comparison = unadjusted_estimate(t, treatment, outcome, config)
            certified = satisfies_backdoor(g, treatment, outcome, adjustment)
            certification = "backdoor-certified" if certified else "override (not certified)"
            doc = report.estimation_doc(estimates, config, comparison, certification)
            if not certified:
                doc["rejection_reason"] = backdoor_rejection_reason(
                    g, treatment, outcome, adjustment
                )
            doc["graph_version"] = v
            return doc

        rid, doc = ws.cached(key, compute)
        return {"report_id": rid, **doc}

    @app.post("/api/v1/simulate")
    def post_simulate(body: dict):
        if "scm" not in body:
            raise HTTPException(400, "body must carry an 'scm' dagfile text")
        model = scm.from_parsed(dagfile.parse(body["scm"]))
        n = int(body.get("n", 1000))
        seed = int(body.get("seed", 0))
        table = scm.sample(model, n, seed)
        doc = {
            "tool_version": causeway.__version__,
            "n": n,
            "seed": seed,
            "csv": table.to_csv(),
        }
        rid = ws.store_report(doc)
        return {"report_id": rid, **doc}

    @app.get("/api/v1/reports/{report_id}")
    def get_report(report_id: str):
        if report_id not in ws.reports:
            raise HTTPException(404, f"no report {report_id}")
        return {"report_id": report_id, **ws.reports[report_id]}

    app.state.workspace = ws
    return app
