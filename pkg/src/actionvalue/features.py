"""Fixed-order feature vectors for game states.

Columns come in three groups, ordered oldest window action first ("lag2"
is two actions back, "lag0" is the current action for w=3):

* per window action (42 each): one-hot type (21), one-hot result (6),
  one-hot body part (4), start/end coordinates and the action's start time
  (5), then derived geometry: distance and absolute angle to the attacked
  goal center (105, 34) at both endpoints, and the signed x/y displacement
  (6). Coordinates are in the possessor-attacks-right normalized frame.
* between consecutive window actions (3 each): the gap the ball covered
  between one action's end and the next one's start, the time between them
  (clamped at zero: provider clocks glitch), and a did-the-team-change flag.
* once per state (3): goals scored so far by the possessing team, by the
  defending team, and their difference.

Total = 42w + 3(w-1) + 3, i.e. 135 columns for the default w=3. The schema
carries an order-sensitive content hash so models can refuse mismatched
matrices.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .actions import (
    ActionResult,
    BodyPart,
    GOAL_CENTER_Y,
    ON_BALL_TYPES,
    PITCH_LENGTH,
    PITCH_WIDTH,
)
from .errors import InputError, SchemaMismatch
from .gamestate import GameState

_TYPE_INDEX = {t: i for i, t in enumerate(ON_BALL_TYPES)}
_RESULT_INDEX = {r: i for i, r in enumerate(ActionResult)}
_BODYPART_INDEX = {b: i for i, b in enumerate(BodyPart)}

PER_ACTION_COLUMNS = len(_TYPE_INDEX) + len(_RESULT_INDEX) + len(_BODYPART_INDEX) + 5 + 6
PER_PAIR_COLUMNS = 3
CONTEXT_COLUMNS = 3


def _action_block_names(lag: int) -> list[str]:
    names = [f"type_{t.value}_lag{lag}" for t in ON_BALL_TYPES]
    names += [f"result_{r.value}_lag{lag}" for r in ActionResult]
    names += [f"bodypart_{b.value}_lag{lag}" for b in BodyPart]
    names += [
        f"start_x_lag{lag}",
        f"start_y_lag{lag}",
        f"end_x_lag{lag}",
        f"end_y_lag{lag}",
        f"time_elapsed_lag{lag}",
        f"dist_goal_start_lag{lag}",
        f"angle_goal_start_lag{lag}",
        f"dist_goal_end_lag{lag}",
        f"angle_goal_end_lag{lag}",
        f"dx_lag{lag}",
        f"dy_lag{lag}",
    ]
    return names


@dataclass(frozen=True)
class FeatureSchema:
    w: int
    names: tuple[str, ...]

    @classmethod
    def build(cls, w: int) -> "FeatureSchema":
        if w < 1:
            raise InputError(f"window size must be >= 1, got {w}")
        names: list[str] = []
        for slot in range(w):
            names.extend(_action_block_names(w - 1 - slot))
        for slot in range(1, w):
            lag = w - 1 - slot  # pair between lag+1 and lag
            names += [
                f"space_delta_lag{lag}",
                f"time_delta_lag{lag}",
                f"possession_change_lag{lag}",
            ]
        names += ["goals_scored_possessing", "goals_scored_defending", "goal_difference"]
        return cls(w=w, names=tuple(names))

    @classmethod
    def from_names(cls, names: list[str] | tuple[str, ...]) -> "FeatureSchema":
        """Reconstruct and verify a schema from a persisted header."""
        if len(names) % (PER_ACTION_COLUMNS + PER_PAIR_COLUMNS) != 0:
            raise SchemaMismatch(f"{len(names)} columns is not a valid schema size")
        w = len(names) // (PER_ACTION_COLUMNS + PER_PAIR_COLUMNS)
        schema = cls.build(w)
        if tuple(names) != schema.names:
            raise SchemaMismatch("column names do not match the schema for their size")
        return schema

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def hash(self) -> str:
        digest = hashlib.sha256("\n".join(self.names).encode("utf-8")).hexdigest()
        return digest[:16]


def _goal_geometry(x: float, y: float) -> tuple[float, float]:
    dx = PITCH_LENGTH - x
    dy = GOAL_CENTER_Y - y
    return math.hypot(dx, dy), math.atan2(abs(dy), dx)


def encode_features(state: GameState, schema: FeatureSchema) -> np.ndarray:
    """Encode one game state into a vector laid out per ``schema``."""
    if len(state.window) != schema.w:
        raise SchemaMismatch(
            f"state window has {len(state.window)} actions, schema wants {schema.w}"
        )
    vec = np.zeros(len(schema.names), dtype=np.float64)
    pos = 0
    geom: list[tuple[float, float, float, float]] = []
    for a, flip in zip(state.window, state.window_flips):
        if flip:
            geom.append(
                (
                    PITCH_LENGTH - a.start_x,
                    PITCH_WIDTH - a.start_y,
                    PITCH_LENGTH - a.end_x,
                    PITCH_WIDTH - a.end_y,
                )
            )
        else:
            geom.append((a.start_x, a.start_y, a.end_x, a.end_y))
    for (sx, sy, ex, ey), a in zip(geom, state.window):
        try:
            vec[pos + _TYPE_INDEX[a.action_type]] = 1.0
        except KeyError:
            raise InputError(
                f"off-ball action type {a.action_type.value} cannot be encoded"
            ) from None
        pos += len(_TYPE_INDEX)
        vec[pos + _RESULT_INDEX[a.result]] = 1.0
        pos += len(_RESULT_INDEX)
        vec[pos + _BODYPART_INDEX[a.body_part]] = 1.0
        pos += len(_BODYPART_INDEX)
        dist_s, angle_s = _goal_geometry(sx, sy)
        dist_e, angle_e = _goal_geometry(ex, ey)
        vec[pos : pos + 11] = (
            sx,
            sy,
            ex,
            ey,
            max(a.start_time, 0.0),
            dist_s,
            angle_s,
            dist_e,
            angle_e,
            ex - sx,
            ey - sy,
        )
        pos += 11
    for slot in range(1, schema.w):
        prev_a = state.window[slot - 1]
        cur_a = state.window[slot]
        psx, psy, pex, pey = geom[slot - 1]
        csx, csy, _, _ = geom[slot]
        vec[pos : pos + 3] = (
            math.hypot(csx - pex, csy - pey),
            max(cur_a.start_time - prev_a.end_time, 0.0),
            0.0 if cur_a.team_id == prev_a.team_id else 1.0,
        )
        pos += 3
    vec[pos : pos + 3] = (
        float(state.goals_possessing),
        float(state.goals_defending),
        float(state.goals_possessing - state.goals_defending),
    )
    return vec
