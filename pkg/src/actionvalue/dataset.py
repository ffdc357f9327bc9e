"""Assemble training matrices from corpora of games.

Row order is deterministic: games sorted by game_id, states in action
order within each game. Windows never mix actions from different games.
The CSV form carries the schema as its header, the state identity as
(game_id, action_id) and the two label columns last.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

import numpy as np

from .actions import Game
from .errors import EmptyInput, InputError, LengthMismatch
from .features import FeatureSchema, encode_features
from .fileio import atomic_write_text, fmt_float, require_file
from .gamestate import gamestates
from .labels import label_states

_ID_COLUMNS = ("game_id", "action_id")
_LABEL_COLUMNS = ("scores", "concedes")


@dataclass
class Dataset:
    X: np.ndarray  # (n, len(schema)) float64
    scores: np.ndarray  # (n,) bool
    concedes: np.ndarray  # (n,) bool
    index: list[tuple[str, int]]  # (game_id, action_id) per row
    schema: FeatureSchema

    def __post_init__(self) -> None:
        n = len(self.X)
        if not (len(self.scores) == len(self.concedes) == len(self.index) == n):
            raise LengthMismatch("dataset arrays are not aligned")

    @property
    def n_rows(self) -> int:
        return len(self.X)


def build_dataset(games: list[Game], w: int = 3, k: int = 10) -> Dataset:
    """Encode every state of every game; labels computed per game."""
    if not games:
        raise EmptyInput("no games to build a dataset from")
    ids = [g.game_id for g in games]
    if len(set(ids)) != len(ids):
        raise InputError("duplicate game ids in corpus")
    schema = FeatureSchema.build(w)
    rows: list[np.ndarray] = []
    scores: list[bool] = []
    concedes: list[bool] = []
    index: list[tuple[str, int]] = []
    for game in sorted(games, key=lambda g: g.game_id):
        states = gamestates(game, w)
        labels = label_states(game, k)
        for state, label in zip(states, labels):
            rows.append(encode_features(state, schema))
            scores.append(label.scores)
            concedes.append(label.concedes)
            index.append((game.game_id, state.action.action_id))
    X = np.vstack(rows) if rows else np.zeros((0, len(schema)))
    return Dataset(
        X=X,
        scores=np.array(scores, dtype=bool),
        concedes=np.array(concedes, dtype=bool),
        index=index,
        schema=schema,
    )


def dataset_csv_text(ds: Dataset) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(_ID_COLUMNS + ds.schema.names + _LABEL_COLUMNS)
    for r in range(ds.n_rows):
        game_id, action_id = ds.index[r]
        row = [game_id, str(action_id)]
        row.extend(fmt_float(v) for v in ds.X[r])
        row.append("1" if ds.scores[r] else "0")
        row.append("1" if ds.concedes[r] else "0")
        writer.writerow(row)
    return buf.getvalue()


def write_dataset_csv(ds: Dataset, path: str | os.PathLike[str]) -> None:
    atomic_write_text(path, dataset_csv_text(ds))


def read_dataset_csv(path: str | os.PathLike[str]) -> Dataset:
    p = require_file(path)
    with open(p, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{p} is empty") from None
        if tuple(header[:2]) != _ID_COLUMNS or tuple(header[-2:]) != _LABEL_COLUMNS:
            raise InputError(
                f"{p}: expected columns {_ID_COLUMNS} ... {_LABEL_COLUMNS}"
            )
        schema = FeatureSchema.from_names(header[2:-2])
        rows: list[list[float]] = []
        scores: list[bool] = []
        concedes: list[bool] = []
        index: list[tuple[str, int]] = []
        for line in reader:
            if not line:
                continue
            index.append((line[0], int(line[1])))
            rows.append([float(v) for v in line[2:-2]])
            scores.append(line[-2] == "1")
            concedes.append(line[-1] == "1")
    X = np.array(rows, dtype=np.float64) if rows else np.zeros((0, len(schema)))
    return Dataset(
        X=X,
        scores=np.array(scores, dtype=bool),
        concedes=np.array(concedes, dtype=bool),
        index=index,
        schema=schema,
    )
