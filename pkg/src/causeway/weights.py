"""Propensity scores and inverse-probability weights."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from causeway.data import DataTable
from causeway.errors import NonFinite, SchemaMismatch
from causeway.logistic import LogisticModel

UNSTABILIZED = "Unstabilized"
STABILIZED = "Stabilized"


@dataclass(frozen=True)
class WeightVector:
    weights: np.ndarray
    kind: str
    diagnostics: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.diagnostics}


def marginal_scores(t: DataTable, treatment: str) -> np.ndarray:
    """Each row's empirical marginal probability of its own treatment level.

    Exact closed form for the no-covariate propensity model; keeps empty
    adjustment sets producing stabilized weights of exactly 1.
    """
    codes = t.column(treatment)
    n_levels = len(t.schema.variable(treatment).levels)
    freq = np.bincount(codes, minlength=n_levels) / t.row_count
    return freq[codes]


def propensity_scores(model: LogisticModel, t: DataTable, treatment: str) -> np.ndarray:
    """Per-row predicted probability of the row's own observed treatment level."""
    if model.outcome != treatment:
        raise SchemaMismatch(
            f"model was fitted for {model.outcome!r}, not treatment {treatment!r}"
        )
    proba = model.predict_proba(t)  # columns ordered as model.classes
    levels = t.schema.variable(treatment).levels
    class_pos = {}
    for pos, cls in enumerate(model.classes):
        class_pos[cls] = pos
    codes = t.column(treatment)
    cols = np.array([class_pos[levels[c]] for c in codes])
    return proba[np.arange(t.row_count), cols]


def ip_weights(
    scores: np.ndarray, t: DataTable, treatment: str, stabilize: bool = True
) -> WeightVector:
    """Inverse-propensity weights; the stabilized variant multiplies by the
    marginal probability of the observed level."""
    scores = np.asarray(scores, np.float64)
    if np.any(scores <= 0.0) or np.any(scores >= 1.0) or not np.all(np.isfinite(scores)):
        raise NonFinite("propensity scores must lie strictly in (0, 1)")
    if stabilize:
        marg = marginal_scores(t, treatment)
        w = marg / scores
        kind = STABILIZED
    else:
        w = 1.0 / scores
        kind = UNSTABILIZED
    codes = t.column(treatment)
    levels = t.schema.variable(treatment).levels
    per_level_mean = {
        levels[c]: float(w[codes == c].mean()) for c in np.unique(codes)
    }
    diagnostics = {
        "min": float(w.min()),
        "max": float(w.max()),
        "mean": float(w.mean()),
        "mean_by_level": per_level_mean,
    }
    return WeightVector(w, kind, diagnostics)


def truncate_weights(w: WeightVector, percentile: float) -> WeightVector:
    """Symmetric percentile truncation (e.g. percentile=1 clips at 1st/99th)."""
    lo, hi = np.percentile(w.weights, [percentile, 100 - percentile])
    clipped = np.clip(w.weights, lo, hi)
    diagnostics = dict(w.diagnostics)
    diagnostics.update(
        truncated_at=(float(lo), float(hi)),
        n_clipped=int(np.sum((w.weights < lo) | (w.weights > hi))),
        min=float(clipped.min()),
        max=float(clipped.max()),
        mean=float(clipped.mean()),
    )
    return WeightVector(clipped, w.kind, diagnostics)
