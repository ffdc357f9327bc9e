"""Per-action values from scoring/conceding probability deltas.

Framing convention, used consistently here and in training labels: the
models predict in the frame of the team possessing the ball after the
action. Home/visitor-frame curves (``p_hg``/``p_vg``) are derived by the
possession mapping, and an action's value is

    V(a_i) = (P_hg(S_i) - P_hg(S_prev)) - (P_vg(S_i) - P_vg(S_prev))

when the home team possesses after a_i, with the two terms swapped
otherwise. ``offensive`` and ``defensive`` are the same two differences
expressed for the possessing team, so ``total = offensive + defensive``
reproduces the branch formula bit for bit (identical operands, identical
operation order).

``S_prev`` is the preceding state within the same period; the first action
of each period is valued against that period's baseline state (the padded
kickoff window), so value chains never cross period boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .actions import Game, on_ball_actions
from .errors import MissingState, SchemaMismatch
from .features import FeatureSchema, encode_features
from .gamestate import GameState, gamestates, period_baseline_states


@dataclass(frozen=True)
class StateProbabilities:
    """Model outputs per game state, in possessor and home/visitor frames."""

    game_id: str
    states: tuple[GameState, ...]
    p_score: np.ndarray  # P(possessing-after team scores within horizon)
    p_concede: np.ndarray  # P(possessing-after team concedes within horizon)
    p_hg: np.ndarray  # same numbers mapped to the home team's frame
    p_vg: np.ndarray
    baselines: dict[int, tuple[float, float]]  # period -> (p_hg, p_vg) prior


@dataclass(frozen=True)
class ActionValue:
    game_id: str
    action_id: int
    player_id: str
    team_id: str
    action_type: str
    offensive: float
    defensive: float
    total: float
    possessing_team_after: str


@dataclass(frozen=True)
class Chain:
    """A maximal run of consecutive states with one possessing team."""

    game_id: str
    team_id: str
    period: int
    start_action_id: int
    end_action_id: int
    n_actions: int
    value_sum: float
    telescoped_delta: float


@dataclass(frozen=True)
class AttackDecomposition:
    chains: tuple[Chain, ...]
    best: ActionValue | None
    worst: ActionValue | None


def _check_model_schema(model, schema: FeatureSchema, name: str) -> None:
    stored = getattr(model, "schema_hash_", None)
    if stored is not None and stored != schema.hash:
        raise SchemaMismatch(
            f"{name} model was trained on schema {stored}, features have {schema.hash}"
        )
    if model.n_features_in_ != len(schema):
        raise SchemaMismatch(
            f"{name} model expects {model.n_features_in_} features, "
            f"schema has {len(schema)}"
        )


def state_probabilities(
    model_scores,
    model_concedes,
    game: Game,
    states: list[GameState],
    X: np.ndarray,
    schema: FeatureSchema,
    baseline_states: dict[int, GameState],
) -> StateProbabilities:
    """Predict per-state probabilities and map them to the home frame."""
    _check_model_schema(model_scores, schema, "scores")
    _check_model_schema(model_concedes, schema, "concedes")
    home = game.home_team_id
    if len(states) == 0:
        return StateProbabilities(
            game_id=game.game_id,
            states=(),
            p_score=np.empty(0),
            p_concede=np.empty(0),
            p_hg=np.empty(0),
            p_vg=np.empty(0),
            baselines={},
        )
    p_score = model_scores.predict_proba(X)[:, 1]
    p_concede = model_concedes.predict_proba(X)[:, 1]
    home_mask = np.array([s.possessing_team == home for s in states])
    p_hg = np.where(home_mask, p_score, p_concede)
    p_vg = np.where(home_mask, p_concede, p_score)

    baselines: dict[int, tuple[float, float]] = {}
    if baseline_states:
        periods = sorted(baseline_states)
        Xb = np.vstack(
            [encode_features(baseline_states[p], schema) for p in periods]
        )
        bs = model_scores.predict_proba(Xb)[:, 1]
        bc = model_concedes.predict_proba(Xb)[:, 1]
        for j, period in enumerate(periods):
            if baseline_states[period].possessing_team == home:
                baselines[period] = (float(bs[j]), float(bc[j]))
            else:
                baselines[period] = (float(bc[j]), float(bs[j]))
    return StateProbabilities(
        game_id=game.game_id,
        states=tuple(states),
        p_score=p_score,
        p_concede=p_concede,
        p_hg=p_hg,
        p_vg=p_vg,
        baselines=baselines,
    )


def value_actions(game: Game, probs: StateProbabilities) -> list[ActionValue]:
    """One ActionValue per on-ball action, in on-ball order."""
    if probs.game_id != game.game_id:
        raise MissingState(
            f"probabilities are for game {probs.game_id!r}, not {game.game_id!r}"
        )
    n_actions = len(on_ball_actions(game))
    if len(probs.states) != n_actions:
        raise MissingState(
            f"game has {n_actions} on-ball actions, probabilities cover "
            f"{len(probs.states)} states"
        )
    home = game.home_team_id
    values: list[ActionValue] = []
    for i, state in enumerate(probs.states):
        action = state.action
        period = action.period
        if i > 0 and probs.states[i - 1].action.period == period:
            prev_hg = float(probs.p_hg[i - 1])
            prev_vg = float(probs.p_vg[i - 1])
        else:
            try:
                prev_hg, prev_vg = probs.baselines[period]
            except KeyError:
                raise MissingState(
                    f"no baseline state for period {period}"
                ) from None
        cur_hg = float(probs.p_hg[i])
        cur_vg = float(probs.p_vg[i])
        if state.possessing_team == home:
            offensive = cur_hg - prev_hg
            defensive = -(cur_vg - prev_vg)
        else:
            offensive = cur_vg - prev_vg
            defensive = -(cur_hg - prev_hg)
        values.append(
            ActionValue(
                game_id=game.game_id,
                action_id=action.action_id,
                player_id=action.player_id,
                team_id=action.team_id,
                action_type=action.action_type.value,
                offensive=offensive,
                defensive=defensive,
                total=offensive + defensive,
                possessing_team_after=state.possessing_team,
            )
        )
    return values


def compute_action_values(
    game: Game, model_scores, model_concedes, w: int = 3
) -> tuple[list[ActionValue], StateProbabilities]:
    """End-to-end valuation of one game with fitted models."""
    schema = FeatureSchema.build(w)
    states = gamestates(game, w=w)
    if states:
        X = np.vstack([encode_features(s, schema) for s in states])
    else:
        X = np.empty((0, len(schema)))
    baseline_states = period_baseline_states(game, w=w)
    probs = state_probabilities(
        model_scores, model_concedes, game, states, X, schema, baseline_states
    )
    return value_actions(game, probs), probs


def home_frame_totals(game: Game, values: list[ActionValue]) -> list[float]:
    """Each action's value signed into the home team's frame.

    This is the quantity that negates exactly under a home/away relabel of
    the whole game; the possessor-frame total itself is invariant.
    """
    home = game.home_team_id
    return [
        v.total if v.possessing_team_after == home else -v.total for v in values
    ]


def attack_decomposition(
    game: Game, probs: StateProbabilities, values: list[ActionValue]
) -> AttackDecomposition:
    """Group values into possession chains and telescope each chain.

    A chain is a maximal run of states with one possessing team inside one
    period. Its telescoped delta compares the chain's last state to the
    state just before the chain (the period baseline for chains that open a
    period), in the chain team's frame.
    """
    if len(values) != len(probs.states):
        raise MissingState("values and probabilities cover different states")
    home = game.home_team_id
    chains: list[Chain] = []
    n = len(probs.states)
    start = 0
    while start < n:
        team = probs.states[start].possessing_team
        period = probs.states[start].action.period
        end = start
        while (
            end + 1 < n
            and probs.states[end + 1].possessing_team == team
            and probs.states[end + 1].action.period == period
        ):
            end += 1
        if start > 0 and probs.states[start - 1].action.period == period:
            prev_hg = float(probs.p_hg[start - 1])
            prev_vg = float(probs.p_vg[start - 1])
        else:
            prev_hg, prev_vg = probs.baselines[period]
        end_hg = float(probs.p_hg[end])
        end_vg = float(probs.p_vg[end])
        if team == home:
            delta = (end_hg - prev_hg) - (end_vg - prev_vg)
        else:
            delta = (end_vg - prev_vg) - (end_hg - prev_hg)
        chains.append(
            Chain(
                game_id=game.game_id,
                team_id=team,
                period=period,
                start_action_id=probs.states[start].action.action_id,
                end_action_id=probs.states[end].action.action_id,
                n_actions=end - start + 1,
                value_sum=math.fsum(v.total for v in values[start : end + 1]),
                telescoped_delta=delta,
            )
        )
        start = end + 1
    best = max(values, key=lambda v: v.total) if values else None
    worst = min(values, key=lambda v: v.total) if values else None
    return AttackDecomposition(chains=tuple(chains), best=best, worst=worst)


VALUE_COLUMNS = (
    "game_id",
    "action_id",
    "player_id",
    "team_id",
    "action_type",
    "offensive",
    "defensive",
    "total",
)


def values_csv_text(values: list[ActionValue]) -> str:
    lines = [",".join(VALUE_COLUMNS)]
    for v in values:
        lines.append(
            f"{v.game_id},{v.action_id},{v.player_id},{v.team_id},"
            f"{v.action_type},{v.offensive!r},{v.defensive!r},{v.total!r}"
        )
    return "\n".join(lines) + "\n"


def read_values_csv(path) -> list[ActionValue]:
    """Read a values CSV written by :func:`values_csv_text`."""
    import csv

    from .errors import InputError, MalformedLine

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"{path}: empty values file") from None
        if tuple(header) != VALUE_COLUMNS:
            raise InputError(
                f"{path}: expected columns {','.join(VALUE_COLUMNS)}"
            )
        out: list[ActionValue] = []
        for line_no, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(VALUE_COLUMNS):
                raise MalformedLine(line_no, f"expected {len(VALUE_COLUMNS)} fields")
            try:
                offensive = float(row[5])
                defensive = float(row[6])
                total = float(row[7])
                action_id = int(row[1])
            except ValueError as exc:
                raise MalformedLine(line_no, str(exc)) from None
            out.append(
                ActionValue(
                    game_id=row[0],
                    action_id=action_id,
                    player_id=row[2],
                    team_id=row[3],
                    action_type=row[4],
                    offensive=offensive,
                    defensive=defensive,
                    total=total,
                    possessing_team_after="",
                )
            )
    return out
