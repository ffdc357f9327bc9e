"""Unified on-ball action language.

Every provider event becomes one nine-attribute action tuple: where and when
it started and ended, who did it, what it was, with which body part, and how
it turned out. A game is an ordered sequence of such actions plus the
metadata needed to interpret them (teams, kickoff directions, minutes).

Pitch coordinates are meters on a 105x68 pitch. The goals are centered at
(0, 34) and (105, 34). Times are seconds from the start of the game; period
boundaries are stored explicitly on each action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import DuplicateOrdinal, InputError, UnknownTeam, UnsortableTimestamps

PITCH_LENGTH = 105.0
PITCH_WIDTH = 68.0
GOAL_CENTER_Y = 34.0


class ActionType(str, Enum):
    PASS = "pass"
    CROSS = "cross"
    THROW_IN = "throw_in"
    CROSSED_CORNER = "crossed_corner"
    SHORT_CORNER = "short_corner"
    CROSSED_FREE_KICK = "crossed_free_kick"
    SHORT_FREE_KICK = "short_free_kick"
    TAKE_ON = "take_on"
    FOUL = "foul"
    TACKLE = "tackle"
    INTERCEPTION = "interception"
    SHOT = "shot"
    SHOT_PENALTY = "shot_penalty"
    SHOT_FREE_KICK = "shot_free_kick"
    KEEPER_SAVE = "keeper_save"
    KEEPER_CLAIM = "keeper_claim"
    KEEPER_PUNCH = "keeper_punch"
    KEEPER_PICK_UP = "keeper_pick_up"
    CLEARANCE = "clearance"
    BAD_TOUCH = "bad_touch"
    DRIBBLE = "dribble"
    RUN_WITHOUT_BALL = "run_without_ball"


class BodyPart(str, Enum):
    FOOT = "foot"
    HEAD = "head"
    OTHER = "other"
    NONE = "none"


class ActionResult(str, Enum):
    SUCCESS = "success"
    FAIL = "fail"
    OFFSIDE = "offside"
    OWN_GOAL = "own_goal"
    YELLOW_CARD = "yellow_card"
    RED_CARD = "red_card"


# run_without_ball is accepted on input but carries no on-ball information;
# game states, features and valuation all operate on ON_BALL_TYPES only.
ON_BALL_TYPES: tuple[ActionType, ...] = tuple(
    t for t in ActionType if t is not ActionType.RUN_WITHOUT_BALL
)

SHOT_TYPES = frozenset(
    {ActionType.SHOT, ActionType.SHOT_PENALTY, ActionType.SHOT_FREE_KICK}
)

_S = ActionResult.SUCCESS
_F = ActionResult.FAIL
_OFF = ActionResult.OFFSIDE
_OG = ActionResult.OWN_GOAL
_YC = ActionResult.YELLOW_CARD
_RC = ActionResult.RED_CARD

# Result legality per type. Offside only on pass-like types, cards only on
# foul and tackle, own_goal on shots plus defensive touches near the own
# goal (clearance, bad touch).
ALLOWED_RESULTS: dict[ActionType, frozenset[ActionResult]] = {
    ActionType.PASS: frozenset({_S, _F, _OFF}),
    ActionType.CROSS: frozenset({_S, _F, _OFF}),
    ActionType.THROW_IN: frozenset({_S, _F}),
    ActionType.CROSSED_CORNER: frozenset({_S, _F, _OFF}),
    ActionType.SHORT_CORNER: frozenset({_S, _F, _OFF}),
    ActionType.CROSSED_FREE_KICK: frozenset({_S, _F, _OFF}),
    ActionType.SHORT_FREE_KICK: frozenset({_S, _F, _OFF}),
    ActionType.TAKE_ON: frozenset({_S, _F}),
    ActionType.FOUL: frozenset({_F, _YC, _RC}),
    ActionType.TACKLE: frozenset({_S, _F, _YC, _RC}),
    ActionType.INTERCEPTION: frozenset({_S}),
    ActionType.SHOT: frozenset({_S, _F, _OG}),
    ActionType.SHOT_PENALTY: frozenset({_S, _F, _OG}),
    ActionType.SHOT_FREE_KICK: frozenset({_S, _F, _OG}),
    ActionType.KEEPER_SAVE: frozenset({_S}),
    ActionType.KEEPER_CLAIM: frozenset({_S, _F}),
    ActionType.KEEPER_PUNCH: frozenset({_S}),
    ActionType.KEEPER_PICK_UP: frozenset({_S}),
    ActionType.CLEARANCE: frozenset({_S, _OG}),
    ActionType.BAD_TOUCH: frozenset({_F, _OG}),
    ActionType.DRIBBLE: frozenset({_S}),
    ActionType.RUN_WITHOUT_BALL: frozenset({_S}),
}

_ANY_BODY = frozenset(BodyPart)
_NO_HEAD = frozenset({BodyPart.FOOT, BodyPart.OTHER, BodyPart.NONE})
_FOOT_OR_NONE = frozenset({BodyPart.FOOT, BodyPart.NONE})

ALLOWED_BODY_PARTS: dict[ActionType, frozenset[BodyPart]] = {
    t: _ANY_BODY for t in ActionType
}
ALLOWED_BODY_PARTS[ActionType.THROW_IN] = _NO_HEAD
for _t in (
    ActionType.KEEPER_SAVE,
    ActionType.KEEPER_CLAIM,
    ActionType.KEEPER_PUNCH,
    ActionType.KEEPER_PICK_UP,
    ActionType.DRIBBLE,
):
    ALLOWED_BODY_PARTS[_t] = _FOOT_OR_NONE

# Possession flips to the other team when the actor's team failed to keep
# the ball. Cards annotate failed fouls/tackles; own goals leave the ball
# with the conceding side for the restart.
POSSESSION_FLIP_RESULTS = frozenset({_F, _OFF, _YC, _RC})


@dataclass(frozen=True, slots=True)
class Action:
    """One on-the-ball (or flagged off-ball) action."""

    action_id: int  # ordinal within the game
    period: int  # 1 or 2
    start_time: float  # seconds from game start
    end_time: float
    start_x: float
    start_y: float
    end_x: float
    end_y: float
    player_id: str
    team_id: str
    action_type: ActionType
    body_part: BodyPart
    result: ActionResult


def validate_action(a: Action) -> list[str]:
    """Return every invariant violation of ``a``; empty list means valid."""
    violations: list[str] = []
    if a.period not in (1, 2):
        violations.append("period must be 1 or 2")
    if not a.start_time >= 0:
        violations.append("start_time negative")
    if not a.end_time >= a.start_time:
        violations.append("end_time before start_time")
    for name in ("start_x", "end_x"):
        v = getattr(a, name)
        if not 0.0 <= v <= PITCH_LENGTH:
            violations.append(f"{name} out of pitch bounds")
    for name in ("start_y", "end_y"):
        v = getattr(a, name)
        if not 0.0 <= v <= PITCH_WIDTH:
            violations.append(f"{name} out of pitch bounds")
    allowed = ALLOWED_RESULTS[a.action_type]
    if a.result not in allowed:
        if allowed == frozenset({_S}):
            violations.append(f"{a.action_type.value} is always success")
        elif allowed == frozenset({_F}):
            violations.append(f"{a.action_type.value} is always fail")
        else:
            violations.append(
                f"result {a.result.value} not allowed for {a.action_type.value}"
            )
    if a.body_part not in ALLOWED_BODY_PARTS[a.action_type]:
        violations.append(
            f"body part {a.body_part.value} not allowed for {a.action_type.value}"
        )
    return violations


@dataclass(frozen=True)
class GameMeta:
    """Metadata needed to turn a bag of actions into a Game."""

    game_id: str
    home_team_id: str
    away_team_id: str
    player_minutes: dict[str, float] = field(default_factory=dict)
    player_positions: dict[str, str] = field(default_factory=dict)
    player_birthdates: dict[str, str] = field(default_factory=dict)
    # (team_id, period) -> attacks toward x=105; None = standard coin toss
    # (home attacks right in period 1, teams swap at half time).
    attack_right: dict[tuple[str, int], bool] | None = None
    final_score: tuple[int, int] | None = None  # (home goals, away goals)


@dataclass(frozen=True)
class Game:
    game_id: str
    home_team_id: str
    away_team_id: str
    actions: tuple[Action, ...]
    player_minutes: dict[str, float] = field(default_factory=dict)
    player_positions: dict[str, str] = field(default_factory=dict)
    player_birthdates: dict[str, str] = field(default_factory=dict)
    attack_right: dict[tuple[str, int], bool] = field(default_factory=dict)

    def other_team(self, team_id: str) -> str:
        if team_id == self.home_team_id:
            return self.away_team_id
        if team_id == self.away_team_id:
            return self.home_team_id
        raise UnknownTeam(f"team {team_id!r} does not play in game {self.game_id!r}")

    def attacks_right(self, team_id: str, period: int) -> bool:
        return self.attack_right[(team_id, period)]


def default_attack_right(
    home_team_id: str, away_team_id: str
) -> dict[tuple[str, int], bool]:
    return {
        (home_team_id, 1): True,
        (home_team_id, 2): False,
        (away_team_id, 1): False,
        (away_team_id, 2): True,
    }


class GoalEvent(NamedTuple):
    index: int  # position in game.actions
    team_id: str  # scoring team


def build_game(actions: Iterable[Action], meta: GameMeta) -> Game:
    """Sort, re-ordinal and integrity-check actions into a Game."""
    acts = list(actions)
    teams = {meta.home_team_id, meta.away_team_id}
    for a in acts:
        if a.team_id not in teams:
            raise UnknownTeam(
                f"action {a.action_id} has team {a.team_id!r}, expected one of {sorted(teams)}"
            )
        if math.isnan(a.start_time) or math.isnan(a.end_time) or a.start_time < 0:
            raise UnsortableTimestamps(
                f"action {a.action_id} has unsortable start_time {a.start_time!r}"
            )
    seen: set[int] = set()
    for a in acts:
        if a.action_id in seen:
            raise DuplicateOrdinal(f"ordinal {a.action_id} appears more than once")
        seen.add(a.action_id)
    acts.sort(key=lambda a: (a.period, a.start_time, a.action_id))
    acts = [replace(a, action_id=i) for i, a in enumerate(acts)]

    game = Game(
        game_id=meta.game_id,
        home_team_id=meta.home_team_id,
        away_team_id=meta.away_team_id,
        actions=tuple(acts),
        player_minutes=dict(meta.player_minutes),
        player_positions=dict(meta.player_positions),
        player_birthdates=dict(meta.player_birthdates),
        attack_right=dict(
            meta.attack_right
            if meta.attack_right is not None
            else default_attack_right(meta.home_team_id, meta.away_team_id)
        ),
    )
    if meta.final_score is not None:
        goals = goal_events(game)
        derived = (
            sum(1 for g in goals if g.team_id == game.home_team_id),
            sum(1 for g in goals if g.team_id == game.away_team_id),
        )
        if derived != tuple(meta.final_score):
            raise InputError(
                f"stored score {meta.final_score} does not match goal events {derived}"
            )
    return game


def goal_events(game: Game) -> list[GoalEvent]:
    """All goals in action order: converted shots and opposing own goals."""
    events: list[GoalEvent] = []
    for i, a in enumerate(game.actions):
        if a.action_type in SHOT_TYPES and a.result is ActionResult.SUCCESS:
            events.append(GoalEvent(i, a.team_id))
        elif a.result is ActionResult.OWN_GOAL:
            events.append(GoalEvent(i, game.other_team(a.team_id)))
    return events


def possession_after(action: Action, game: Game) -> str:
    """Team holding the ball once ``action`` is over."""
    if action.result in POSSESSION_FLIP_RESULTS:
        return game.other_team(action.team_id)
    return action.team_id


def on_ball_actions(game: Game) -> list[Action]:
    return [a for a in game.actions if a.action_type is not ActionType.RUN_WITHOUT_BALL]
