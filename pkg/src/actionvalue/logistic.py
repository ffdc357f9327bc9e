"""L2-regularized logistic regression trained by full-batch gradient descent.

No external ML runtime: the optimizer is plain numpy. The step size is
1/L where L upper-bounds the loss curvature (0.25 x the largest eigenvalue
of the augmented design Gram matrix, plus the ridge term), which makes the
regularized loss provably non-increasing epoch over epoch, a property the
test suite checks literally. Non-binary columns are standardized
internally and the transform is stored with the model; one-hot columns are
left alone.

Fitting on a single-class label vector is allowed and produces a constant
model at the Laplace-smoothed base rate; an empty matrix is DegenerateInput.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SchemaMismatch
from .validation import ParamsMixin, check_is_fitted, check_matrix, check_matrix_labels

_PROB_FLOOR = 1e-12


def _sigmoid(s: np.ndarray) -> np.ndarray:
    out = np.empty_like(s)
    pos = s >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-s[pos]))
    es = np.exp(s[~pos])
    out[~pos] = es / (1.0 + es)
    return out


class LogisticGoalModel(ParamsMixin):
    """Probabilistic binary classifier with an estimator-style API."""

    def __init__(
        self,
        l2: float = 1e-4,
        max_epochs: int = 600,
        tol: float = 1e-7,
        seed: int = 0,
    ) -> None:
        self.l2 = l2
        self.max_epochs = max_epochs
        self.tol = tol
        self.seed = seed  # recorded in metadata; the solver is deterministic

    # --- fitting -----------------------------------------------------------

    def fit(self, X, y, schema_hash: str | None = None) -> "LogisticGoalModel":
        X, yb = check_matrix_labels(X, y)
        n, d = X.shape
        yf = yb.astype(np.float64)

        is_binary = np.all((X == 0.0) | (X == 1.0), axis=0)
        mean = np.where(is_binary, 0.0, X.mean(axis=0))
        std = X.std(axis=0)
        scale = np.where(is_binary | (std < 1e-12), 1.0, std)
        Z = (X - mean) / scale

        self.n_features_in_ = d
        self.schema_hash_ = schema_hash
        self.mean_ = mean
        self.scale_ = scale
        self.binary_mask_ = is_binary

        n_pos = int(yb.sum())
        smoothed = (n_pos + 1.0) / (n + 2.0)
        if n_pos == 0 or n_pos == n:
            self.coef_ = np.zeros(d)
            self.intercept_ = math.log(smoothed / (1.0 - smoothed))
            self.degenerate_ = True
            self.epochs_run_ = 0
            self.loss_history_ = [self._loss(Z, yf, self.coef_, self.intercept_)]
            return self

        # Lipschitz bound via power iteration on the augmented Gram matrix
        aug = np.hstack([Z, np.ones((n, 1))])
        v = np.full(d + 1, 1.0 / math.sqrt(d + 1))
        lam = 1.0
        for _ in range(60):
            u = aug.T @ (aug @ v) / n
            norm = float(np.linalg.norm(u))
            if norm == 0.0:
                break
            lam = norm
            v = u / norm
        # 2% headroom: power iteration approaches the top eigenvalue from below
        step = 1.0 / (0.255 * lam + self.l2 + 1e-12)

        w = np.zeros(d)
        b = math.log(smoothed / (1.0 - smoothed))  # warm-start at base rate
        history = [self._loss(Z, yf, w, b)]
        epochs = 0
        for _ in range(self.max_epochs):
            s = Z @ w + b
            p = _sigmoid(s)
            residual = p - yf
            grad_w = Z.T @ residual / n + self.l2 * w
            grad_b = float(residual.mean())
            gnorm = max(float(np.abs(grad_w).max(initial=0.0)), abs(grad_b))
            if gnorm < self.tol:
                break
            w -= step * grad_w
            b -= step * grad_b
            epochs += 1
            history.append(self._loss(Z, yf, w, b))
        self.coef_ = w
        self.intercept_ = b
        self.degenerate_ = False
        self.epochs_run_ = epochs
        self.loss_history_ = history
        return self

    def _loss(self, Z: np.ndarray, yf: np.ndarray, w: np.ndarray, b: float) -> float:
        s = Z @ w + b
        nll = float(np.mean(np.logaddexp(0.0, s) - yf * s))
        return nll + 0.5 * self.l2 * float(w @ w)

    # --- prediction --------------------------------------------------------

    def predict_proba(self, X) -> np.ndarray:
        check_is_fitted(self, "coef_")
        X = check_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise SchemaMismatch(
                f"model expects {self.n_features_in_} features, got {X.shape[1]}"
            )
        Z = (X - self.mean_) / self.scale_
        p = _sigmoid(Z @ self.coef_ + self.intercept_)
        p = np.clip(p, _PROB_FLOOR, 1.0 - _PROB_FLOOR)
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        return self.predict_proba(X)[:, 1] >= 0.5

    @property
    def classes_(self) -> np.ndarray:
        return np.array([False, True])
