"""Ridge classifier with closed-form leave-one-out cross-validation.

Features are standardised with training statistics, class labels become
one-vs-rest +1/-1 targets, and the regularisation strength is chosen from a
fixed log-spaced grid by exact leave-one-out squared error. A single
economy SVD of the standardised features serves every candidate alpha: with
zero-mean columns the hat matrix of ridge-with-unpenalised-intercept is

    h_i = 1/n + sum_k U[i,k]^2 * s_k^2 / (s_k^2 + alpha)

and each leave-one-out residual is the training residual divided by
(1 - h_i), so no refitting is needed. Prediction is the argmax of the
per-class affine scores.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DEFAULT_ALPHAS = tuple(np.logspace(-3, 3, 10))

# Floor on per-feature standard deviation; constant features standardise to
# zero instead of dividing by zero.
_STD_FLOOR = 1e-8

# Floor on 1 - h_i. Leverages approach 1 when alpha is tiny and the model
# can interpolate; the clamp keeps the LOO error finite so such alphas lose
# the grid search instead of producing NaN.
_DENOM_FLOOR = 1e-8


@dataclass(frozen=True)
class RidgeModel:
    """Fitted classifier: standardisation statistics plus per-class affine
    scores. ``weights`` has shape (num_classes, num_features)."""

    alpha: float
    feature_means: np.ndarray = field(repr=False)
    feature_stds: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    intercepts: np.ndarray = field(repr=False)

    def __post_init__(self):
        means = np.asarray(self.feature_means, dtype=np.float64)
        stds = np.asarray(self.feature_stds, dtype=np.float64)
        weights = np.asarray(self.weights, dtype=np.float64)
        intercepts = np.asarray(self.intercepts, dtype=np.float64)
        if weights.ndim != 2:
            raise ValueError(f"weights must be 2-D (classes x features), got {weights.shape}")
        c, f = weights.shape
        if c < 2:
            raise ValueError(f"need at least two classes, got {c}")
        if means.shape != (f,) or stds.shape != (f,):
            raise ValueError("feature statistics must match the weight column count")
        if intercepts.shape != (c,):
            raise ValueError("need one intercept per class")
        if np.any(stds <= 0):
            raise ValueError("feature stds must be positive")
        if self.alpha <= 0 or not np.isfinite(self.alpha):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha}")
        for name, arr in (
            ("feature_means", means),
            ("feature_stds", stds),
            ("weights", weights),
            ("intercepts", intercepts),
        ):
            if not np.isfinite(arr).all():
                raise ValueError(f"{name} must be finite")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "alpha", float(self.alpha))

    @property
    def num_classes(self) -> int:
        return self.weights.shape[0]

    @property
    def num_features(self) -> int:
        return self.weights.shape[1]


def _standardise(features, means, stds):
    return (features - means) / stds


def _validate_features(features, what="features"):
    x = np.ascontiguousarray(features, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError(f"{what} must be 2-D (examples x features), got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError(f"{what} must be finite")
    return x


def ridge_fit(
    features: np.ndarray,
    labels: np.ndarray,
    num_classes: int | None = None,
    alphas=None,
) -> RidgeModel:
    """Fit on a feature matrix and integer labels in 0..num_classes-1.

    ``alphas`` defaults to the 10-point grid logspace(-3, 3). The grid is
    searched in ascending order and ties in leave-one-out error keep the
    smaller alpha.
    """
    x = _validate_features(features)
    labels = np.asarray(labels, dtype=np.int64)
    n = x.shape[0]
    if labels.shape != (n,):
        raise ValueError(f"labels shape {labels.shape} does not match {n} examples")
    if n < 2:
        raise ValueError("need at least two training examples for leave-one-out selection")
    if num_classes is None:
        num_classes = int(labels.max()) + 1
    if num_classes < 2:
        raise ValueError(f"need at least two classes, got {num_classes}")
    if labels.min() < 0 or labels.max() >= num_classes:
        raise ValueError(f"labels must lie in 0..{num_classes - 1}")
    if alphas is None:
        alphas = DEFAULT_ALPHAS
    alphas = np.sort(np.asarray(alphas, dtype=np.float64))
    if alphas.size == 0 or np.any(alphas <= 0):
        raise ValueError("alphas must be positive")

    means = x.mean(axis=0)
    stds = x.std(axis=0)
    stds = np.where(stds < _STD_FLOOR, _STD_FLOOR, stds)
    xs = _standardise(x, means, stds)

    targets = np.full((n, num_classes), -1.0)
    targets[np.arange(n), labels] = 1.0
    target_means = targets.mean(axis=0)
    centered = targets - target_means

    u, s, vt = np.linalg.svd(xs, full_matrices=False)
    uty = u.T @ centered
    u_sq = u**2
    s_sq = s**2

    best_alpha = None
    best_error = np.inf
    for alpha in alphas:
        shrink = s_sq / (s_sq + alpha)
        leverage = u_sq @ shrink + 1.0 / n
        residuals = centered - u @ (shrink[:, None] * uty)
        denom = np.maximum(1.0 - leverage, _DENOM_FLOOR)
        loo_error = float(np.sum((residuals / denom[:, None]) ** 2))
        if loo_error < best_error:
            best_error = loo_error
            best_alpha = float(alpha)

    coef = vt.T @ ((s / (s_sq + best_alpha))[:, None] * uty)
    return RidgeModel(
        alpha=best_alpha,
        feature_means=means,
        feature_stds=stds,
        weights=coef.T,
        intercepts=target_means,
    )


def ridge_scores(model: RidgeModel, features: np.ndarray) -> np.ndarray:
    """Per-class affine scores, shape (num_examples, num_classes)."""
    x = _validate_features(features)
    if x.shape[1] != model.num_features:
        raise ValueError(
            f"feature count {x.shape[1]} does not match the model's {model.num_features}"
        )
    return _standardise(x, model.feature_means, model.feature_stds) @ model.weights.T + model.intercepts


def ridge_predict(model: RidgeModel, features: np.ndarray) -> np.ndarray:
    """Predicted class ids; score ties resolve to the lowest class id."""
    return np.argmax(ridge_scores(model, features), axis=1).astype(np.int64)
