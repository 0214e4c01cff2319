"""Conditional-independence testing of data against graph-implied claims.

The statistic is the likelihood-ratio G-squared over strata of the
conditioning variables, referred to a chi-squared distribution; a Pearson
chi-squared variant is available for sensitivity checks. The batch runner
tests every local-Markov claim of a graph plus one dependence check per edge,
surfacing unsupported edges as removal candidates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.stats import chi2

from causeway.data import DataTable, stratified_counts
from causeway.errors import DegenerateTable, SchemaMismatch
from causeway.graph import CausalDag, SeparationQuery, implied_independencies

INDEPENDENT = "Independent"
DEPENDENT = "Dependent"
UNDETERMINED = "Undetermined"

CONSISTENT = "Consistent"
INCONSISTENT = "Inconsistent"

LOW_COUNT = "LowCount"
DEFAULT_ALPHA = 0.01
LOW_EXPECTED = 5.0


@dataclass(frozen=True)
class IndependenceTestResult:
    claim: SeparationQuery
    statistic: float
    dof: int
    p_value: float
    verdict: str
    alpha: float
    flags: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "x": self.claim.x,
            "y": self.claim.y,
            "given": sorted(self.claim.z),
            "statistic": self.statistic,
            "dof": self.dof,
            "p_value": self.p_value,
            "verdict": self.verdict,
            "alpha": self.alpha,
            "flags": list(self.flags),
        }


@dataclass(frozen=True)
class EdgeCheck:
    """Dependence check for one edge: source vs target given the target's
    other parents. An Independent verdict marks the edge unsupported."""

    edge: tuple[str, str]
    result: IndependenceTestResult

    @property
    def unsupported(self) -> bool:
        return self.result.verdict == INDEPENDENT


@dataclass(frozen=True)
class EditProposal:
    action: str
    edge: tuple[str, str]
    evidence: IndependenceTestResult

    def __str__(self):
        return (
            f"remove {self.edge[0]} -> {self.edge[1]} "
            f"(p={self.evidence.p_value:.4g}, data finds no dependence)"
        )


@dataclass(frozen=True)
class ImplicationReport:
    graph_id: str
    alpha: float
    claim_results: tuple[IndependenceTestResult, ...]
    edge_checks: tuple[EdgeCheck, ...]

    @property
    def violated(self) -> tuple[IndependenceTestResult, ...]:
        return tuple(r for r in self.claim_results if r.verdict == DEPENDENT)

    @property
    def consistent_claims(self) -> tuple[IndependenceTestResult, ...]:
        return tuple(r for r in self.claim_results if r.verdict != DEPENDENT)

    @property
    def unsupported_edges(self) -> tuple[EdgeCheck, ...]:
        return tuple(c for c in self.edge_checks if c.unsupported)

    @property
    def verdict(self) -> str:
        # inconsistent when the data rejects an implied independence OR fails
        # to support a claimed edge (either way the graph mismatches the data)
        if self.violated or self.unsupported_edges:
            return INCONSISTENT
        return CONSISTENT

    def to_dict(self) -> dict:
        return {
            "format": "causeway-implication-report v1",
            "graph_id": self.graph_id,
            "alpha": self.alpha,
            "verdict": self.verdict,
            "claims": [r.to_dict() for r in self.claim_results],
            "edges": [
                {
                    "edge": list(c.edge),
                    "unsupported": c.unsupported,
                    "test": c.result.to_dict(),
                }
                for c in self.edge_checks
            ],
        }


def _stratum_terms(counts: np.ndarray, method: str) -> tuple[float, int, bool]:
    """(statistic contribution, dof contribution, low-count flag) for one stratum."""
    obs = counts[counts.sum(axis=1) > 0][:, counts.sum(axis=0) > 0]
    r, c = obs.shape
    if r < 2 or c < 2:
        return 0.0, 0, False
    total = obs.sum()
    expected = np.outer(obs.sum(axis=1), obs.sum(axis=0)) / total
    if method == "gsq":
        nz = obs > 0
        stat = 2.0 * float(np.sum(obs[nz] * np.log(obs[nz] / expected[nz])))
    elif method == "pearson":
        stat = float(np.sum((obs - expected) ** 2 / expected))
    else:
        raise ValueError(f"unknown method {method!r}")
    return stat, (r - 1) * (c - 1), bool(np.any(expected < LOW_EXPECTED))


def ci_test(
    t: DataTable,
    x: str,
    y: str,
    z=(),
    alpha: float = DEFAULT_ALPHA,
    method: str = "gsq",
) -> IndependenceTestResult:
    """Test x independent of y given z at significance level alpha."""
    if not 0 < alpha < 1:
        raise ValueError("alpha must be in (0, 1)")
    tables = stratified_counts(t, x, y, z)
    for name in (x, y):
        if len(np.unique(t.column(name))) < 2:
            raise DegenerateTable(name)
    stat = 0.0
    dof = 0
    low = False
    for ct in tables:
        s, d, lo = _stratum_terms(ct.counts.astype(np.float64), method)
        stat += s
        dof += d
        low = low or lo
    claim = SeparationQuery(x, y, frozenset(z))
    flags = (LOW_COUNT,) if low else ()
    if dof == 0:
        return IndependenceTestResult(claim, stat, 0, 1.0, UNDETERMINED, alpha, flags)
    p = float(chi2.sf(stat, dof))
    verdict = INDEPENDENT if p > alpha else DEPENDENT
    return IndependenceTestResult(claim, stat, dof, p, verdict, alpha, flags)


def test_implications(
    g: CausalDag,
    t: DataTable,
    alpha: float = DEFAULT_ALPHA,
    method: str = "gsq",
) -> ImplicationReport:
    """Run every local-Markov claim of the graph plus per-edge dependence checks."""
    missing = set(g.variable_names) - set(t.schema.names)
    if missing:
        raise SchemaMismatch(f"graph variables not in table schema: {sorted(missing)}")
    from causeway.dagfile import fingerprint

    claim_results = tuple(
        ci_test(t, q.x, q.y, sorted(q.z), alpha=alpha, method=method)
        for q in implied_independencies(g)
    )
    edge_checks = []
    for src, dst in sorted(g.edges):
        given = sorted(set(g.parents(dst)) - {src})
        edge_checks.append(
            EdgeCheck((src, dst), ci_test(t, src, dst, given, alpha=alpha, method=method))
        )
    return ImplicationReport(fingerprint(g), alpha, claim_results, tuple(edge_checks))


def suggest_edits(report: ImplicationReport) -> list[EditProposal]:
    """Remove-edge proposals for unsupported edges; never mutates a graph."""
    return [
        EditProposal("remove-edge", check.edge, check.result)
        for check in report.unsupported_edges
    ]
