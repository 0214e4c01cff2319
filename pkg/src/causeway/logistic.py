"""Self-contained logistic and multinomial-logistic fitting.

Newton/IRLS on the log-likelihood with a small ridge term in the normal
equations for numerical stability on sparse categorical designs; the
convergence criterion is on the un-penalized gradient, so the fitted
coefficients are maximum-likelihood to the stated tolerance. Categorical
predictors are encoded as one indicator per non-reference level, plus an
intercept. Supports per-row sample weights (used by the IPW outcome model).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from causeway.data import DataTable
from causeway.errors import DegenerateOutcome, PerfectSeparation, SchemaMismatch

RIDGE = 1e-6
GRAD_TOL = 1e-8
MAX_ITER = 100
# |beta| beyond this means the likelihood is still climbing toward a
# separation boundary; a genuine categorical MLE never gets near it
DIVERGENCE_BOUND = 30.0
NOT_CONVERGED = "NotConverged"


@dataclass(frozen=True)
class Design:
    """Indicator encoding of a predictor list against a schema."""

    predictors: tuple[str, ...]
    column_labels: tuple[str, ...]  # "intercept" then "Var=Level" per column

    @staticmethod
    def build(t: DataTable, predictors) -> tuple["Design", np.ndarray]:
        predictors = tuple(predictors)
        labels = ["intercept"]
        cols = [np.ones(t.row_count)]
        for name in predictors:
            v = t.schema.variable(name)
            codes = t.column(name)
            ref_idx = v.levels.index(v.reference_level)
            for idx, level in enumerate(v.levels):
                if idx == ref_idx:
                    continue
                labels.append(f"{name}={level}")
                cols.append((codes == idx).astype(np.float64))
        design = Design(predictors, tuple(labels))
        return design, np.column_stack(cols)

    def offending(self, coef: np.ndarray) -> str:
        flat = np.abs(np.atleast_2d(coef)).max(axis=0)
        return self.column_labels[int(np.argmax(flat))]


@dataclass(frozen=True)
class LogisticModel:
    """Fitted (multinomial) logistic model.

    For the binary case ``classes`` is (reference, modeled level) and ``coef``
    has shape (1, p); multinomial stacks one coefficient row per non-reference
    class (baseline-category logit).
    """

    outcome: str
    classes: tuple[str, ...]  # reference first
    predictors: tuple[str, ...]
    column_labels: tuple[str, ...]
    coef: np.ndarray  # (K-1, p)
    iterations: int
    grad_norm: float
    converged: bool
    flags: tuple[str, ...] = ()

    def linear_predictor(self, X: np.ndarray) -> np.ndarray:
        return X @ self.coef.T

    def predict_proba_matrix(self, X: np.ndarray) -> np.ndarray:
        """Per-class probabilities, classes ordered as ``self.classes``."""
        eta = np.clip(self.linear_predictor(X), -700, 700)
        expo = np.exp(np.column_stack([np.zeros(len(X)), eta]))
        return expo / expo.sum(axis=1, keepdims=True)

    def predict_proba(self, t: DataTable) -> np.ndarray:
        missing = [p for p in self.predictors if p not in t.schema]
        if missing or self.outcome not in t.schema:
            raise SchemaMismatch(f"model variables missing from table: {missing}")
        _, X = Design.build(t, self.predictors)
        if X.shape[1] != self.coef.shape[1]:
            raise SchemaMismatch("design width does not match fitted coefficients")
        return self.predict_proba_matrix(X)


def _newton(X, Y, weights, labels, design: Design) -> tuple[np.ndarray, int, float, bool]:
    """Maximize the multinomial log-likelihood. Y: (n, K) one-hot."""
    n, p = X.shape
    k1 = Y.shape[1] - 1  # free classes
    coef = np.zeros((k1, p))
    w = weights
    grad_norm = np.inf
    for iteration in range(1, MAX_ITER + 1):
        eta = np.clip(X @ coef.T, -700, 700)
        expo = np.exp(np.column_stack([np.zeros(n), eta]))
        P = expo / expo.sum(axis=1, keepdims=True)
        resid = Y[:, 1:] - P[:, 1:]
        grad = (X.T @ (w[:, None] * resid)).T.reshape(-1)  # (k1*p,)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm < GRAD_TOL:
            return coef, iteration - 1, grad_norm, True
        H = np.empty((k1 * p, k1 * p))
        for a in range(k1):
            for b in range(a, k1):
                pa, pb = P[:, a + 1], P[:, b + 1]
                wab = w * (pa * ((1.0 if a == b else 0.0) - pb))
                block = X.T @ (wab[:, None] * X)
                H[a * p:(a + 1) * p, b * p:(b + 1) * p] = block
                if b != a:
                    H[b * p:(b + 1) * p, a * p:(a + 1) * p] = block.T
        H[np.diag_indices_from(H)] += RIDGE
        step = np.linalg.solve(H, grad).reshape(k1, p)
        coef = coef + step
        if np.abs(coef).max() > DIVERGENCE_BOUND:
            raise PerfectSeparation(design.offending(coef))
    return coef, MAX_ITER, grad_norm, False


def fit_multinomial(
    t: DataTable,
    outcome: str,
    predictors=(),
    sample_weight: np.ndarray | None = None,
) -> LogisticModel:
    """Baseline-category multinomial logit of the outcome on the predictors."""
    v = t.schema.variable(outcome)
    predictors = tuple(predictors)
    if outcome in predictors:
        raise SchemaMismatch(f"outcome {outcome!r} cannot also be a predictor")
    codes = t.column(outcome)
    observed = np.unique(codes)
    if len(observed) < 2:
        raise DegenerateOutcome(outcome, v.levels[int(observed[0])])
    ref_idx = v.levels.index(v.reference_level)
    class_order = [ref_idx] + [i for i in range(len(v.levels)) if i != ref_idx]
    classes = tuple(v.levels[i] for i in class_order)
    Y = np.zeros((t.row_count, len(classes)))
    for pos, idx in enumerate(class_order):
        Y[:, pos] = codes == idx
    design, X = Design.build(t, predictors)
    w = np.ones(t.row_count) if sample_weight is None else np.asarray(sample_weight, float)
    coef, iters, gnorm, converged = _newton(X, Y, w, design.column_labels, design)
    flags = () if converged else (NOT_CONVERGED,)
    return LogisticModel(
        outcome, classes, predictors, design.column_labels, coef, iters, gnorm, converged, flags
    )


def fit_logistic(
    t: DataTable,
    outcome: str,
    outcome_level: str,
    predictors=(),
    sample_weight: np.ndarray | None = None,
) -> LogisticModel:
    """Binary logistic fit of Pr(outcome == outcome_level) on the predictors."""
    v = t.schema.variable(outcome)
    if outcome_level not in v.levels:
        raise SchemaMismatch(f"{outcome_level!r} is not a level of {outcome!r}")
    predictors = tuple(predictors)
    if outcome in predictors:
        raise SchemaMismatch(f"outcome {outcome!r} cannot also be a predictor")
    y = (t.column(outcome) == v.levels.index(outcome_level)).astype(np.float64)
    if y.min() == y.max():
        raise DegenerateOutcome(outcome, outcome_level if y[0] else f"not {outcome_level}")
    Y = np.column_stack([1.0 - y, y])
    design, X = Design.build(t, predictors)
    w = np.ones(t.row_count) if sample_weight is None else np.asarray(sample_weight, float)
    coef, iters, gnorm, converged = _newton(X, Y, w, design.column_labels, design)
    flags = () if converged else (NOT_CONVERGED,)
    classes = (f"not:{outcome_level}", outcome_level)
    return LogisticModel(
        outcome, classes, predictors, design.column_labels, coef, iters, gnorm, converged, flags
    )


def fit_binary_vector(
    t: DataTable,
    y: np.ndarray,
    predictors=(),
    sample_weight: np.ndarray | None = None,
    outcome_name: str = "outcome",
) -> LogisticModel:
    """Binary fit against an explicit 0/1 response vector (e.g. a mapped
    multi-level outcome). Same fitting machinery as :func:`fit_logistic`."""
    y = np.asarray(y, np.float64)
    if y.min() == y.max():
        raise DegenerateOutcome(outcome_name, str(int(y[0])))
    Y = np.column_stack([1.0 - y, y])
    design, X = Design.build(t, predictors)
    w = np.ones(t.row_count) if sample_weight is None else np.asarray(sample_weight, float)
    coef, iters, gnorm, converged = _newton(X, Y, w, design.column_labels, design)
    flags = () if converged else (NOT_CONVERGED,)
    return LogisticModel(
        outcome_name, ("0", "1"), design.predictors, design.column_labels,
        coef, iters, gnorm, converged, flags,
    )
