"""Versioned JSON persistence for fitted models.

The container is a single JSON object:

    {"format": "actionvalue.model", "version": 1, "kind": "...",
     "schema_hash": ..., "n_features": ..., "target": ...,
     "params": {...}, "payload": {...}}

Floats are serialized with ``repr`` (json does this natively), which
round-trips float64 exactly, so a saved and reloaded model produces
bit-identical predictions.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import CorruptFile, VersionMismatch
from .fileio import atomic_write_text
from .forest import RandomForestGoalModel, Tree
from .logistic import LogisticGoalModel

FORMAT_TAG = "actionvalue.model"
FORMAT_VERSION = 1

_KINDS = {"logistic", "forest"}


def _logistic_payload(model: LogisticGoalModel) -> dict:
    return {
        "coef": model.coef_.tolist(),
        "intercept": model.intercept_,
        "mean": model.mean_.tolist(),
        "scale": model.scale_.tolist(),
        "binary_mask": [bool(b) for b in model.binary_mask_],
        "degenerate": model.degenerate_,
        "epochs_run": model.epochs_run_,
    }


def _logistic_restore(model: LogisticGoalModel, payload: dict) -> None:
    model.coef_ = np.array(payload["coef"], dtype=np.float64)
    model.intercept_ = float(payload["intercept"])
    model.mean_ = np.array(payload["mean"], dtype=np.float64)
    model.scale_ = np.array(payload["scale"], dtype=np.float64)
    model.binary_mask_ = np.array(payload["binary_mask"], dtype=bool)
    model.degenerate_ = bool(payload["degenerate"])
    model.epochs_run_ = int(payload["epochs_run"])


def _forest_payload(model: RandomForestGoalModel) -> dict:
    return {
        "trees": [
            {
                "feature": t.feature.tolist(),
                "threshold": t.threshold.tolist(),
                "left": t.left.tolist(),
                "right": t.right.tolist(),
                "value": t.value.tolist(),
                "count": t.count.tolist(),
            }
            for t in model.trees_
        ]
    }


def _forest_restore(model: RandomForestGoalModel, payload: dict) -> None:
    model.trees_ = [
        Tree(
            feature=np.array(t["feature"], dtype=np.int32),
            threshold=np.array(t["threshold"], dtype=np.float64),
            left=np.array(t["left"], dtype=np.int32),
            right=np.array(t["right"], dtype=np.int32),
            value=np.array(t["value"], dtype=np.float64),
            count=np.array(t["count"], dtype=np.int32),
        )
        for t in payload["trees"]
    ]


def model_kind(model) -> str:
    if isinstance(model, LogisticGoalModel):
        return "logistic"
    if isinstance(model, RandomForestGoalModel):
        return "forest"
    raise CorruptFile(f"unsupported model type {type(model).__name__}")


def save_model(model, path, target: str | None = None) -> None:
    """Serialize a fitted model to ``path`` atomically."""
    kind = model_kind(model)
    doc = {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "kind": kind,
        "schema_hash": getattr(model, "schema_hash_", None),
        "n_features": int(model.n_features_in_),
        "target": target,
        "params": model.get_params(),
        "payload": (
            _logistic_payload(model) if kind == "logistic" else _forest_payload(model)
        ),
    }
    atomic_write_text(path, json.dumps(doc, sort_keys=True) + "\n")


def load_model(path):
    """Load a model saved by :func:`save_model`.

    Returns ``(model, target)``. Raises CorruptFile for anything that is not
    a well-formed container and VersionMismatch for an unsupported version.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptFile(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CorruptFile(f"{path}: expected a JSON object")
    if doc.get("format") != FORMAT_TAG:
        raise CorruptFile(f"{path}: not a model file (format tag missing or wrong)")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise VersionMismatch(
            f"{path}: model format version {version!r}, expected {FORMAT_VERSION}"
        )
    for key in ("kind", "n_features", "params", "payload"):
        if key not in doc:
            raise CorruptFile(f"{path}: missing key {key!r}")
    kind = doc["kind"]
    if kind not in _KINDS:
        raise CorruptFile(f"{path}: unknown model kind {kind!r}")
    try:
        if kind == "logistic":
            model = LogisticGoalModel(**doc["params"])
            _logistic_restore(model, doc["payload"])
        else:
            model = RandomForestGoalModel(**doc["params"])
            _forest_restore(model, doc["payload"])
        model.n_features_in_ = int(doc["n_features"])
        model.schema_hash_ = doc.get("schema_hash")
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptFile(f"{path}: malformed payload: {exc}") from exc
    return model, doc.get("target")
