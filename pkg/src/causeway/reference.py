"""Loaders for the bundled reference study assets."""
from __future__ import annotations

import json
from importlib import resources

from causeway import dagfile, scm
from causeway.graph import CausalDag
from causeway.scm import ScmSpec

PILOT_ONLY_EDGES = (
    ("Traffic", "1stConcernWhileStuckInTraffic"),
    ("1stConcernWhileStuckInTraffic", "RouteChoice"),
)


def _read(name: str) -> str:
    return resources.files("causeway.assets").joinpath(name).read_text(encoding="utf-8")


def reference_graph(revision: str = "final") -> CausalDag:
    """The bundled 12-variable route-choice graph, 'final' or 'pilot'."""
    if revision not in ("final", "pilot"):
        raise ValueError("revision must be 'final' or 'pilot'")
    return dagfile.parse(_read(f"reference_{revision}.dag")).graph()


def reference_scm() -> ScmSpec:
    """Synthetic structural model over the final reference graph."""
    return scm.from_parsed(dagfile.parse(_read("reference_final.scm")))


def scenario_scm(name: str) -> ScmSpec:
    """Bundled minimal scenario: confounded_triangle, null_triangle, collider_trap."""
    if name not in ("confounded_triangle", "null_triangle", "collider_trap"):
        raise ValueError(f"unknown scenario {name!r}")
    return scm.from_parsed(dagfile.parse(_read(f"{name}.scm")))


def study_descriptor() -> dict:
    return json.loads(_read("study_descriptor.json"))


def outcome_success_levels() -> tuple[str, ...]:
    """RouteChoice levels that count as a diversion in the default analysis."""
    return tuple(study_descriptor()["outcome_mapping"]["diverted_levels"])
