"""Probabilistic classifier metrics: log loss, Brier score, ROC AUC,
calibration bins.

The AUC is the Mann-Whitney rank statistic with 0.5 credit for ties. Rank
sums here are sums of half-integers, which float64 represents exactly at
any realistic n, so the result matches a brute-force pairwise count bit for
bit rather than merely to a tolerance. A test set with only one class has
no ranking to measure; by convention that reports 0.5 with a degenerate
flag instead of failing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, LengthMismatch
from .validation import check_probabilities


@dataclass(frozen=True)
class CalibrationBin:
    mean_predicted: float
    fraction_positive: float
    count: int


@dataclass(frozen=True)
class EvalReport:
    log_loss: float
    roc_auc: float
    brier: float
    auc_degenerate: bool
    n: int
    n_bins: int
    bins: tuple[CalibrationBin, ...]

    def to_dict(self) -> dict:
        return {
            "log_loss": self.log_loss,
            "roc_auc": self.roc_auc,
            "brier": self.brier,
            "auc_degenerate": self.auc_degenerate,
            "n": self.n,
            "n_bins": self.n_bins,
            "bins": [
                {
                    "mean_predicted": b.mean_predicted,
                    "fraction_positive": b.fraction_positive,
                    "count": b.count,
                }
                for b in self.bins
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvalReport":
        return cls(
            log_loss=float(data["log_loss"]),
            roc_auc=float(data["roc_auc"]),
            brier=float(data["brier"]),
            auc_degenerate=bool(data["auc_degenerate"]),
            n=int(data["n"]),
            n_bins=int(data["n_bins"]),
            bins=tuple(
                CalibrationBin(
                    mean_predicted=float(b["mean_predicted"]),
                    fraction_positive=float(b["fraction_positive"]),
                    count=int(b["count"]),
                )
                for b in data["bins"]
            ),
        )


def _checked(probs, y) -> tuple[np.ndarray, np.ndarray]:
    p = check_probabilities(probs)
    yb = np.asarray(y, dtype=bool)
    if yb.ndim != 1 or len(yb) != len(p):
        raise LengthMismatch(f"{len(p)} probabilities but {len(np.atleast_1d(yb))} labels")
    if len(p) == 0:
        raise EmptyInput("cannot evaluate zero predictions")
    return p, yb


def log_loss(probs, y) -> float:
    p, yb = _checked(probs, y)
    with np.errstate(divide="ignore"):
        terms = np.where(yb, np.log(p), np.log1p(-p))
    return float(-terms.mean())


def brier_score(probs, y) -> float:
    p, yb = _checked(probs, y)
    diff = p - yb.astype(np.float64)
    return float(np.mean(diff * diff))


def roc_auc(probs, y) -> tuple[float, bool]:
    """(AUC, degenerate flag); 0.5 with flag when only one class is present."""
    p, yb = _checked(probs, y)
    n = len(p)
    n_pos = int(yb.sum())
    n_neg = n - n_pos
    if n_pos == 0 or n_neg == 0:
        return 0.5, True
    order = np.argsort(p, kind="mergesort")
    sorted_p = p[order]
    ranks = np.empty(n, dtype=np.float64)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and sorted_p[j + 1] == sorted_p[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j + 2) / 2.0  # average 1-based rank
        i = j + 1
    rank_sum_pos = float(ranks[yb].sum())
    numerator = rank_sum_pos - n_pos * (n_pos + 1) / 2.0
    return float(numerator / (n_pos * n_neg)), False


def calibration_bins(probs, y, n_bins: int = 10) -> list[CalibrationBin]:
    """Equal-width bins on [0,1]; only occupied bins are returned."""
    p, yb = _checked(probs, y)
    if n_bins < 1:
        raise EmptyInput(f"n_bins must be >= 1, got {n_bins}")
    idx = np.minimum((p * n_bins).astype(int), n_bins - 1)
    bins: list[CalibrationBin] = []
    for b in np.unique(idx):
        mask = idx == b
        bins.append(
            CalibrationBin(
                mean_predicted=float(p[mask].mean()),
                fraction_positive=float(yb[mask].mean()),
                count=int(mask.sum()),
            )
        )
    return bins


def evaluate(probs, y, n_bins: int = 10) -> EvalReport:
    p, yb = _checked(probs, y)
    auc, degenerate = roc_auc(p, yb)
    return EvalReport(
        log_loss=log_loss(p, yb),
        roc_auc=auc,
        brier=brier_score(p, yb),
        auc_degenerate=degenerate,
        n=len(p),
        n_bins=n_bins,
        bins=tuple(calibration_bins(p, yb, n_bins)),
    )
