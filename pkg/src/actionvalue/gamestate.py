"""Game states: the windowed context a probability model sees.

A game state at on-ball action ``a_i`` is the window of the w most recent
on-ball actions (default 3), plus bookkeeping: which team holds the ball
once ``a_i`` is over, and the goal tally so far. Windows at the start of a
game are left-padded by repeating the earliest action so vectors keep a
fixed length.

Direction normalization happens per window action: each action is mirrored
(x -> 105-x, y -> 68-y) whenever the possessing-after team attacks toward
x=0 in that action's period, so the team on the ball always attacks toward
x=105 in feature space. Off-ball runs are dropped before windows are formed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import (
    Action,
    ActionResult,
    Game,
    SHOT_TYPES,
    on_ball_actions,
    possession_after,
)
from .errors import InputError


@dataclass(frozen=True)
class GameState:
    game_id: str
    index: int  # position in the game's on-ball sequence; -1 for baselines
    window: tuple[Action, ...]  # length w, oldest first
    window_flips: tuple[bool, ...]  # mirror flag per window action
    possessing_team: str
    home_possessing: bool
    period: int  # period of the newest window action
    goals_possessing: int  # goals by the possessing team up to and incl. a_i
    goals_defending: int

    @property
    def action(self) -> Action:
        return self.window[-1]


def _goal_team(a: Action, game: Game) -> str | None:
    if a.action_type in SHOT_TYPES and a.result is ActionResult.SUCCESS:
        return a.team_id
    if a.result is ActionResult.OWN_GOAL:
        return game.other_team(a.team_id)
    return None


def _window(seq: list[Action], i: int, w: int) -> tuple[Action, ...]:
    if i + 1 >= w:
        return tuple(seq[i - w + 1 : i + 1])
    return tuple([seq[0]] * (w - 1 - i) + seq[: i + 1])


def _flips(game: Game, team: str, window: tuple[Action, ...]) -> tuple[bool, ...]:
    return tuple(not game.attacks_right(team, a.period) for a in window)


def gamestates(game: Game, w: int = 3) -> list[GameState]:
    """One state per on-ball action, in action order."""
    if w < 1:
        raise InputError(f"window size must be >= 1, got {w}")
    seq = on_ball_actions(game)
    goals = {game.home_team_id: 0, game.away_team_id: 0}
    states: list[GameState] = []
    for i, a in enumerate(seq):
        scorer = _goal_team(a, game)
        if scorer is not None:
            goals[scorer] += 1
        team = possession_after(a, game)
        window = _window(seq, i, w)
        states.append(
            GameState(
                game_id=game.game_id,
                index=i,
                window=window,
                window_flips=_flips(game, team, window),
                possessing_team=team,
                home_possessing=team == game.home_team_id,
                period=a.period,
                goals_possessing=goals[team],
                goals_defending=goals[game.other_team(team)],
            )
        )
    return states


def period_baseline_states(game: Game, w: int = 3) -> dict[int, GameState]:
    """The prior state each period's first action is valued against.

    The window is the period's first on-ball action repeated w times and
    possession is that action's own team: a neutral restart context built
    from data the models have seen, instead of a hardcoded league prior.
    """
    seq = on_ball_actions(game)
    goals = {game.home_team_id: 0, game.away_team_id: 0}
    out: dict[int, GameState] = {}
    for a in seq:
        if a.period not in out:
            team = a.team_id
            window = tuple([a] * w)
            scorer = _goal_team(a, game)
            counted = dict(goals)
            if scorer is not None:
                counted[scorer] += 1
            out[a.period] = GameState(
                game_id=game.game_id,
                index=-1,
                window=window,
                window_flips=_flips(game, team, window),
                possessing_team=team,
                home_possessing=team == game.home_team_id,
                period=a.period,
                goals_possessing=counted[team],
                goals_defending=counted[game.other_team(team)],
            )
        scorer = _goal_team(a, game)
        if scorer is not None:
            goals[scorer] += 1
    return out
