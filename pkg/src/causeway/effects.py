"""Causal effect estimation via stabilized inverse-probability weighting.

Pipeline: multinomial propensity model on the adjustment set, stabilized
weights, then a weighted logistic outcome model on treatment indicators.
Each non-reference treatment level yields one contrast carrying both an odds
ratio (exp of the outcome-model coefficient) and a risk ratio (ratio of
weighted outcome means), with a seeded percentile-bootstrap interval for the
configured headline measure.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from causeway.data import DataTable
from causeway.errors import (
    CausewayError,
    DegenerateOutcome,
    InvalidAdjustment,
    TooManyFailures,
)
from causeway.graph import AdjustmentSet, CausalDag, backdoor_rejection_reason, satisfies_backdoor
from causeway.logistic import fit_binary_vector, fit_multinomial
from causeway.weights import ip_weights, marginal_scores, propensity_scores, truncate_weights

ADJUSTED = "Adjusted"
UNADJUSTED = "Unadjusted"

MEASURE_RISK_RATIO = "rr"
MEASURE_ODDS_RATIO = "or"


@dataclass(frozen=True)
class EstimateConfig:
    """Knobs for one estimation run. ``outcome_success`` lists the outcome
    levels counted as the event; default is every non-reference level."""

    graph: CausalDag | None = None
    outcome_success: tuple[str, ...] | None = None
    measure: str = MEASURE_RISK_RATIO
    replicates: int = 500
    seed: int = 0
    stabilize: bool = True
    override_adjustment: bool = False
    truncate_percentile: float | None = None

    def config_digest(self) -> str:
        import hashlib
        import json

        payload = {
            "outcome_success": sorted(self.outcome_success) if self.outcome_success else None,
            "measure": self.measure,
            "replicates": self.replicates,
            "seed": self.seed,
            "stabilize": self.stabilize,
            "override_adjustment": self.override_adjustment,
            "truncate_percentile": self.truncate_percentile,
        }
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]


@dataclass(frozen=True)
class EffectEstimate:
    treatment: str
    outcome: str
    level: str
    reference: str
    odds_ratio: float
    risk_ratio: float
    interval_95: tuple[float, float]
    measure: str
    adjustment: tuple[str, ...]
    method: str
    diagnostics: dict = field(default_factory=dict)

    @property
    def point(self) -> float:
        return self.risk_ratio if self.measure == MEASURE_RISK_RATIO else self.odds_ratio

    def to_dict(self) -> dict:
        return {
            "treatment": self.treatment,
            "outcome": self.outcome,
            "contrast": f"{self.level} vs {self.reference}",
            "odds_ratio": self.odds_ratio,
            "risk_ratio": self.risk_ratio,
            "interval_95": list(self.interval_95),
            "measure": self.measure,
            "adjustment": list(self.adjustment),
            "method": self.method,
            "diagnostics": self.diagnostics,
        }

    def __str__(self):
        low, high = self.interval_95
        return (
            f"{self.treatment}: {self.level} vs {self.reference} — "
            f"{self.point:.3f} [{low:.3f}, {high:.3f}]"
        )


def _success_vector(t: DataTable, outcome: str, config: EstimateConfig) -> np.ndarray:
    v = t.schema.variable(outcome)
    if config.outcome_success is None:
        success = {lv for lv in v.levels if lv != v.reference_level}
    else:
        unknown = set(config.outcome_success) - set(v.levels)
        if unknown:
            raise CausewayError(f"outcome levels not declared: {sorted(unknown)}")
        success = set(config.outcome_success)
    codes = t.column(outcome)
    success_codes = {v.levels.index(lv) for lv in success}
    return np.isin(codes, list(success_codes)).astype(np.float64)


def _point_estimates(
    t: DataTable, treatment: str, outcome: str, adjustment: tuple[str, ...],
    config: EstimateConfig, collect_diagnostics: bool = False,
):
    """(per-level (odds_ratio, risk_ratio), diagnostics) for one table."""
    tv = t.schema.variable(treatment)
    y = _success_vector(t, outcome, config)
    if y.min() == y.max():
        raise DegenerateOutcome(outcome, "constant mapped outcome")
    diagnostics: dict = {}
    if adjustment:
        prop_model = fit_multinomial(t, treatment, adjustment)
        scores = propensity_scores(prop_model, t, treatment)
        if collect_diagnostics:
            diagnostics["propensity_convergence"] = {
                "iterations": prop_model.iterations,
                "grad_norm": prop_model.grad_norm,
                "converged": prop_model.converged,
            }
    else:
        scores = marginal_scores(t, treatment)
    if config.stabilize and not adjustment:
        # marginal numerator and denominator are identical: weights are 1 exactly
        wv_weights = np.ones(t.row_count)
        if collect_diagnostics:
            diagnostics["weights"] = {"kind": "Stabilized", "min": 1.0, "max": 1.0, "mean": 1.0}
    else:
        wv = ip_weights(scores, t, treatment, stabilize=config.stabilize)
        if config.truncate_percentile is not None:
            wv = truncate_weights(wv, config.truncate_percentile)
        wv_weights = wv.weights
        if collect_diagnostics:
            diagnostics["weights"] = wv.to_dict()

    outcome_model = fit_binary_vector(
        t, y, predictors=(treatment,), sample_weight=wv_weights, outcome_name=outcome
    )
    if collect_diagnostics:
        diagnostics["outcome_convergence"] = {
            "iterations": outcome_model.iterations,
            "grad_norm": outcome_model.grad_norm,
            "converged": outcome_model.converged,
        }
    codes = t.column(treatment)
    ref_code = tv.levels.index(tv.reference_level)
    ref_mask = codes == ref_code
    p_ref = float(np.sum(wv_weights[ref_mask] * y[ref_mask]) / np.sum(wv_weights[ref_mask]))
    contrasts: dict[str, tuple[float, float]] = {}
    for idx, level in enumerate(tv.levels):
        if idx == ref_code:
            continue
        label = f"{treatment}={level}"
        col = outcome_model.column_labels.index(label)
        odds_ratio = float(np.exp(outcome_model.coef[0, col]))
        mask = codes == idx
        if not mask.any():
            continue
        p_level = float(np.sum(wv_weights[mask] * y[mask]) / np.sum(wv_weights[mask]))
        risk_ratio = p_level / p_ref if p_ref > 0 else float("inf")
        contrasts[level] = (odds_ratio, risk_ratio)
    return contrasts, diagnostics


def _bootstrap_contrasts(
    t: DataTable, treatment: str, outcome: str, adjustment: tuple[str, ...],
    config: EstimateConfig,
) -> tuple[dict[str, tuple[float, float]], int]:
    """Percentile 2.5/97.5 bounds per contrast, shared row resamples."""
    rng = np.random.default_rng(config.seed)
    draws: dict[str, list[float]] = {}
    failures = 0
    pick = 0 if config.measure == MEASURE_ODDS_RATIO else 1
    for _ in range(config.replicates):
        idx = rng.integers(0, t.row_count, size=t.row_count)
        resampled = t.select_rows(idx)
        try:
            contrasts, _ = _point_estimates(resampled, treatment, outcome, adjustment, config)
        except CausewayError:
            failures += 1
            continue
        for level, pair in contrasts.items():
            draws.setdefault(level, []).append(pair[pick])
    if failures > 0.2 * config.replicates:
        raise TooManyFailures(failures, config.replicates)
    out = {}
    for level, values in draws.items():
        low, high = np.percentile(values, [2.5, 97.5])
        out[level] = (float(low), float(high))
    return out, failures


def bootstrap_ci(t: DataTable, estimator, replicates: int, seed: int) -> tuple[float, float]:
    """Percentile 95% interval of a scalar estimator under seeded row resampling.

    Replicates that raise a structured error are dropped and counted; more
    than 20% failures aborts."""
    if replicates < 100:
        raise ValueError("replicates must be >= 100")
    rng = np.random.default_rng(seed)
    values = []
    failures = 0
    for _ in range(replicates):
        idx = rng.integers(0, t.row_count, size=t.row_count)
        try:
            values.append(float(estimator(t.select_rows(idx))))
        except CausewayError:
            failures += 1
    if failures > 0.2 * replicates:
        raise TooManyFailures(failures, replicates)
    low, high = np.percentile(values, [2.5, 97.5])
    return float(low), float(high)


def _normalize_adjustment(adjustment) -> tuple[str, ...]:
    if adjustment is None:
        return ()
    if isinstance(adjustment, AdjustmentSet):
        return tuple(sorted(adjustment.variables))
    return tuple(sorted(set(adjustment)))


def estimate_effect(
    t: DataTable,
    treatment: str,
    outcome: str,
    adjustment,
    config: EstimateConfig | None = None,
    method: str = ADJUSTED,
) -> list[EffectEstimate]:
    """IPW contrasts of every non-reference treatment level vs the reference.

    When a graph is supplied in the config, the adjustment set must satisfy
    the back-door criterion unless ``override_adjustment`` is set; overrides
    are recorded in the estimate provenance.
    """
    config = config or EstimateConfig()
    adj = _normalize_adjustment(adjustment)
    overridden = False
    if config.graph is not None:
        if not satisfies_backdoor(config.graph, treatment, outcome, adj):
            reason = backdoor_rejection_reason(config.graph, treatment, outcome, adj)
            if not config.override_adjustment:
                raise InvalidAdjustment(
                    f"adjustment set {set(adj) or '{}'} fails the back-door criterion "
                    f"for ({treatment}, {outcome}): {reason}"
                )
            overridden = True
    if config.replicates < 100:
        raise ValueError("replicates must be >= 100")
    contrasts, diagnostics = _point_estimates(
        t, treatment, outcome, adj, config, collect_diagnostics=True
    )
    intervals, failures = _bootstrap_contrasts(t, treatment, outcome, adj, config)
    diagnostics["bootstrap"] = {
        "replicates": config.replicates,
        "failed": failures,
        "seed": config.seed,
    }
    if overridden:
        diagnostics["adjustment_override"] = backdoor_rejection_reason(
            config.graph, treatment, outcome, adj
        )
    tv = t.schema.variable(treatment)
    out = []
    for level in tv.levels:
        if level not in contrasts:
            continue
        odds_ratio, risk_ratio = contrasts[level]
        point = risk_ratio if config.measure == MEASURE_RISK_RATIO else odds_ratio
        low, high = intervals.get(level, (point, point))
        # percentile bounds can in principle exclude the point; widen to keep
        # the reported triple ordered
        low, high = min(low, point), max(high, point)
        out.append(
            EffectEstimate(
                treatment, outcome, level, tv.reference_level,
                odds_ratio, risk_ratio, (low, high), config.measure,
                adj, method, diagnostics,
            )
        )
    return out


def unadjusted_estimate(
    t: DataTable, treatment: str, outcome: str, config: EstimateConfig | None = None
) -> list[EffectEstimate]:
    """Effect contrasts with no adjustment and unit weights."""
    config = config or EstimateConfig()
    config = replace(config, graph=None)
    return estimate_effect(t, treatment, outcome, (), config, method=UNADJUSTED)
