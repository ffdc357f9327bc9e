"""Input validation helpers and the estimator parameter protocol.

The two learners follow the familiar estimator conventions: hyperparameters
are constructor arguments, ``fit`` learns state into trailing-underscore
attributes and returns self, ``get_params``/``set_params`` expose the
constructor arguments for tooling. These helpers keep that protocol and the
array checks in one place.
"""

from __future__ import annotations

import inspect

import numpy as np

from .errors import DegenerateInput, InputError, LengthMismatch, NotFitted


def check_matrix(X, *, name: str = "X") -> np.ndarray:
    """Coerce to a finite 2-D float64 matrix."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise InputError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise InputError(f"{name} holds NaN or infinite values")
    return arr


def check_matrix_labels(X, y) -> tuple[np.ndarray, np.ndarray]:
    """Validate a training pair; empty matrices are degenerate, not silent."""
    arr = check_matrix(X)
    labels = np.asarray(y)
    if labels.dtype != bool:
        uniq = np.unique(labels)
        if not np.isin(uniq, (0, 1)).all():
            raise InputError("labels must be boolean (or 0/1)")
        labels = labels.astype(bool)
    if labels.ndim != 1:
        raise InputError(f"labels must be 1-dimensional, got shape {labels.shape}")
    if len(arr) != len(labels):
        raise LengthMismatch(f"{len(arr)} rows but {len(labels)} labels")
    if len(arr) == 0:
        raise DegenerateInput("cannot fit on an empty matrix")
    return arr, labels


def check_probabilities(p, *, name: str = "probs") -> np.ndarray:
    arr = np.asarray(p, dtype=np.float64)
    if arr.ndim != 1:
        raise InputError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if not np.isfinite(arr).all() or (arr < 0).any() or (arr > 1).any():
        raise InputError(f"{name} must lie within [0, 1]")
    return arr


def check_is_fitted(estimator, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise NotFitted(
            f"{type(estimator).__name__} must be fitted before this call"
        )


class ParamsMixin:
    """get_params/set_params/repr driven by the constructor signature."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        return [n for n in sig.parameters if n != "self"]

    def get_params(self, deep: bool = True) -> dict:
        return {n: getattr(self, n) for n in self._param_names()}

    def set_params(self, **params):
        valid = set(self._param_names())
        for key, value in params.items():
            if key not in valid:
                raise InputError(
                    f"{type(self).__name__} has no parameter {key!r}"
                )
            setattr(self, key, value)
        return self

    def __repr__(self) -> str:
        args = ", ".join(f"{n}={getattr(self, n)!r}" for n in self._param_names())
        return f"{type(self).__name__}({args})"
