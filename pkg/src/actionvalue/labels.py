"""Scoring/conceding labels for game states.

A state is a "scores" positive when the team possessing the ball after
action i puts the ball in the net within the next k on-ball actions
(window (i, i+k], strictly after i), either by a converted shot of its own
or an own goal by the opponent. "concedes" mirrors the definition for the
opposing team. Goal windows never cross a period boundary: play restarts
at half time, so near-future influence resets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import Game, on_ball_actions, possession_after
from .errors import InputError
from .gamestate import _goal_team


@dataclass(frozen=True, slots=True)
class LabelPair:
    scores: bool
    concedes: bool


def label_states(game: Game, k: int = 10) -> list[LabelPair]:
    """One LabelPair per on-ball action, aligned with gamestates()."""
    if k < 1:
        raise InputError(f"goal window must be >= 1 actions, got {k}")
    seq = on_ball_actions(game)
    goals: list[tuple[int, str]] = []
    for j, a in enumerate(seq):
        team = _goal_team(a, game)
        if team is not None:
            goals.append((j, team))
    labels: list[LabelPair] = []
    for i, a in enumerate(seq):
        team = possession_after(a, game)
        period = a.period
        scores = concedes = False
        for j, scoring_team in goals:
            if j <= i:
                continue
            if j > i + k:
                break
            if seq[j].period != period:
                continue
            if scoring_team == team:
                scores = True
            else:
                concedes = True
        labels.append(LabelPair(scores=scores, concedes=concedes))
    return labels
