"""Window-size ablation: train and score one model per window length."""

from __future__ import annotations

from dataclasses import dataclass

from .dataset import build_dataset
from .errors import InputError
from .forest import RandomForestGoalModel
from .logistic import LogisticGoalModel
from .metrics import evaluate

LEARNERS = {"forest": RandomForestGoalModel, "logistic": LogisticGoalModel}


@dataclass(frozen=True)
class SweepRow:
    w: int
    log_loss: float
    roc_auc: float
    brier: float
    auc_degenerate: bool


def make_learner(learner: str, params: dict | None = None):
    if learner not in LEARNERS:
        raise InputError(f"unknown learner {learner!r}; expected forest or logistic")
    return LEARNERS[learner](**(params or {}))


def split_games(games, train_frac: float = 0.7):
    """Deterministic train/test split over games sorted by game_id."""
    ordered = sorted(games, key=lambda g: g.game_id)
    if len(ordered) < 2:
        raise InputError("window sweep needs at least 2 games to split")
    if not 0.0 < train_frac < 1.0:
        raise InputError("train_frac must be in (0, 1)")
    n_train = min(max(int(round(train_frac * len(ordered))), 1), len(ordered) - 1)
    return ordered[:n_train], ordered[n_train:]


def window_sweep(
    games,
    w_values,
    k: int = 10,
    learner: str = "forest",
    learner_params: dict | None = None,
    train_frac: float = 0.7,
    target: str = "scores",
) -> list[SweepRow]:
    w_values = list(w_values)
    if not w_values:
        raise InputError("w_values must be nonempty")
    if target not in ("scores", "concedes"):
        raise InputError(f"unknown target {target!r}")
    train_games, test_games = split_games(games, train_frac)
    rows = []
    for w in w_values:
        train = build_dataset(train_games, w=w, k=k)
        test = build_dataset(test_games, w=w, k=k)
        y_train = train.scores if target == "scores" else train.concedes
        y_test = test.scores if target == "scores" else test.concedes
        model = make_learner(learner, learner_params)
        model.fit(train.X, y_train, schema_hash=train.schema.hash)
        probs = model.predict_proba(test.X)[:, 1]
        report = evaluate(probs, y_test)
        rows.append(
            SweepRow(
                w=w,
                log_loss=report.log_loss,
                roc_auc=report.roc_auc,
                brier=report.brier,
                auc_degenerate=report.auc_degenerate,
            )
        )
    return rows


def sweep_csv_text(rows: list[SweepRow]) -> str:
    lines = ["w,log_loss,roc_auc,brier,auc_degenerate"]
    for r in rows:
        lines.append(
            f"{r.w},{r.log_loss!r},{r.roc_auc!r},{r.brier!r},"
            f"{'true' if r.auc_degenerate else 'false'}"
        )
    return "\n".join(lines) + "\n"
