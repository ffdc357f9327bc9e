"""Seeded synthetic games for desk-scale verification.

Real event feeds are proprietary, so tests run on games from a possession
chain: one team holds the ball, each step advances the ball toward the goal
it attacks (drift plus noise), and the step's action type depends on where
the ball is. Failed actions hand the ball over, shots convert with a
probability that decays monotonically with distance to goal, and restarts
(kickoffs, throw-ins, corners, free kicks) follow the usual choreography.
That gives a known ground-truth scoring process: states near the opponent
goal really are worth more, which oracle tests and learnability checks rely
on.

Everything is driven by one numpy Generator seeded from the config, so a
fixed seed reproduces a game bit for bit. Corpus generation draws opponents
from a small fixed league so the same players recur across games and
minute-based rating filters have survivors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .actions import (
    Action,
    ActionResult,
    ActionType,
    BodyPart,
    Game,
    GameMeta,
    GOAL_CENTER_Y,
    PITCH_LENGTH,
    PITCH_WIDTH,
    build_game,
    default_attack_right,
)
from .errors import InputError

# Open-play step weights (before the position-dependent shot hazard).
_W_PASS = 0.560
_W_DRIBBLE = 0.265
_W_TAKE_ON = 0.034
_W_CROSS_WIDE = 0.050  # only in the wide attacking channels
_W_BAD_TOUCH = 0.014
_W_FOUL = 0.026  # committed by the defending side
_W_OUT = 0.022  # ball out for a throw-in
_W_OFF_BALL_RUN = 0.004

_SUB_MINUTES = (61.0, 69.0, 76.0)  # one swap per line, both teams

_POSITIONS_11 = ("GK",) + ("DEF",) * 4 + ("MID",) * 4 + ("FWD",) * 2
_SUB_POSITIONS = ("DEF", "MID", "FWD")
_SUB_REPLACES = (2, 6, 9)  # starter index replaced by each sub

# actor-selection weights per (ball zone in possessor frame, position)
_ZONE_WEIGHTS = {
    "def": {"GK": 0.05, "DEF": 0.52, "MID": 0.36, "FWD": 0.07},
    "mid": {"GK": 0.01, "DEF": 0.22, "MID": 0.54, "FWD": 0.23},
    "att": {"GK": 0.0, "DEF": 0.05, "MID": 0.44, "FWD": 0.51},
}


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    n_actions: int = 1600
    team_skill: tuple[float, float] = (0.5, 0.5)  # (home, away)
    shot_rate: float = 0.30  # hazard scale; 0 disables shooting entirely
    pass_success_base: float = 0.80
    drift_mean: float = 5.5  # meters gained toward goal per pass
    drift_noise: float = 5.0

    def validate(self) -> None:
        if self.n_actions < 0:
            raise InputError("n_actions must be >= 0")
        for name in ("shot_rate", "pass_success_base"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise InputError(f"{name} must be within [0,1], got {v}")
        for s in self.team_skill:
            if not 0.0 <= s <= 1.0:
                raise InputError(f"team_skill must be within [0,1], got {s}")


@dataclass
class _Roster:
    team_id: str
    players: list[str]
    positions: dict[str, str]
    birthdates: dict[str, str]
    on_pitch: list[str] = field(default_factory=list)


def _default_roster(team_id: str, team_index: int = 0) -> _Roster:
    players = [f"{team_id}_p{k:02d}" for k in range(14)]
    positions = {
        players[k]: (_POSITIONS_11[k] if k < 11 else _SUB_POSITIONS[k - 11])
        for k in range(14)
    }
    birthdates = {}
    for k, pid in enumerate(players):
        year = 1984 + (team_index * 14 + k) * 17 % 18
        month = 1 + (k * 7 + team_index) % 12
        day = 1 + (k * 11 + team_index * 3) % 28
        birthdates[pid] = f"{year:04d}-{month:02d}-{day:02d}"
    return _Roster(team_id, players, positions, birthdates)


def _goal_prob(dist: float) -> float:
    """Monotone conversion curve: near shots convert often, long shots rarely."""
    return min(0.65, 0.85 * math.exp(-dist / 7.0))


def _shot_hazard(shot_rate: float, dist: float) -> float:
    if dist >= 30.0:
        return 0.0
    return shot_rate * (1.0 - dist / 30.0)


class _Sim:
    """Mutable state of one simulated game."""

    def __init__(self, cfg: SynthConfig, game_id: str, home: _Roster, away: _Roster):
        cfg.validate()
        self.cfg = cfg
        self.game_id = game_id
        self.rosters = {home.team_id: home, away.team_id: away}
        self.home_id = home.team_id
        self.away_id = away.team_id
        self.rng = np.random.default_rng(np.random.SeedSequence(cfg.seed))
        self.attack_right = default_attack_right(self.home_id, self.away_id)
        self.actions: list[Action] = []
        self.period = 1
        self.clock = 0.0
        self.ball = (PITCH_LENGTH / 2.0, GOAL_CENTER_Y)
        self.possessor = self.home_id  # team
        self.holder: str | None = None  # player on the ball
        self.pending: tuple | None = ("kickoff", self.home_id)
        self.entered: dict[str, float] = {}
        self.minutes: dict[str, float] = {}
        self.subs_done = 0
        for r in self.rosters.values():
            r.on_pitch = list(r.players[:11])
            for pid in r.on_pitch:
                self.entered[pid] = 0.0
            for pid in r.players[11:]:
                self.minutes[pid] = 0.0

    # --- helpers -----------------------------------------------------------

    def skill(self, team: str) -> float:
        return self.cfg.team_skill[0 if team == self.home_id else 1]

    def skill_edge(self, team: str) -> float:
        other = self.other(team)
        return self.skill(team) - self.skill(other)

    def other(self, team: str) -> str:
        return self.away_id if team == self.home_id else self.home_id

    def frame_x(self, team: str, x: float) -> float:
        """x in the team's attacking frame (their goal to attack at 105)."""
        return x if self.attack_right[(team, self.period)] else PITCH_LENGTH - x

    def frame_point(self, team: str, x: float, y: float) -> tuple[float, float]:
        if self.attack_right[(team, self.period)]:
            return x, y
        return PITCH_LENGTH - x, PITCH_WIDTH - y

    unframe_point = frame_point  # the mirror is its own inverse

    def dist_to_goal(self, team: str, x: float, y: float) -> float:
        fx, fy = self.frame_point(team, x, y)
        return math.hypot(PITCH_LENGTH - fx, GOAL_CENTER_Y - fy)

    def zone(self, team: str, x: float) -> str:
        fx = self.frame_x(team, x)
        if fx < 35.0:
            return "def"
        if fx < 70.0:
            return "mid"
        return "att"

    def clamp(self, x: float, y: float) -> tuple[float, float]:
        return (
            min(max(x, 0.0), PITCH_LENGTH),
            min(max(y, 0.0), PITCH_WIDTH),
        )

    def pick_player(self, team: str, zone: str, exclude: str | None = None) -> str:
        roster = self.rosters[team]
        weights = _ZONE_WEIGHTS[zone]
        pool = [p for p in roster.on_pitch if p != exclude]
        w = np.array([weights[roster.positions[p]] for p in pool])
        total = w.sum()
        if total <= 0:
            w = np.ones(len(pool))
            total = w.sum()
        return pool[int(self.rng.choice(len(pool), p=w / total))]

    def keeper(self, team: str) -> str:
        roster = self.rosters[team]
        for p in roster.on_pitch:
            if roster.positions[p] == "GK":
                return p
        return roster.on_pitch[0]

    def emit(
        self,
        team: str,
        player: str,
        action_type: ActionType,
        result: ActionResult,
        start: tuple[float, float],
        end: tuple[float, float],
        body_part: BodyPart = BodyPart.FOOT,
    ) -> None:
        duration = 0.4 + 2.0 * float(self.rng.random())
        start_time = self.clock
        end_time = start_time + duration
        sx, sy = self.clamp(*start)
        ex, ey = self.clamp(*end)
        self.actions.append(
            Action(
                action_id=len(self.actions),
                period=self.period,
                start_time=start_time,
                end_time=end_time,
                start_x=sx,
                start_y=sy,
                end_x=ex,
                end_y=ey,
                player_id=player,
                team_id=team,
                action_type=action_type,
                body_part=body_part,
                result=result,
            )
        )
        gap = float(self.rng.gamma(1.6, 1.3))
        self.clock = end_time + gap
        self.maybe_substitute()

    def maybe_substitute(self) -> None:
        while (
            self.subs_done < len(_SUB_MINUTES)
            and self.clock / 60.0 >= _SUB_MINUTES[self.subs_done]
        ):
            idx = self.subs_done
            for roster in self.rosters.values():
                leaving = roster.players[_SUB_REPLACES[idx]]
                arriving = roster.players[11 + idx]
                if leaving in roster.on_pitch:
                    spot = roster.on_pitch.index(leaving)
                    roster.on_pitch[spot] = arriving
                    self.minutes[leaving] = (
                        self.clock - self.entered.pop(leaving)
                    ) / 60.0
                    self.entered[arriving] = self.clock
                    if self.holder == leaving:
                        self.holder = arriving
            self.subs_done += 1

    # --- possession flow ---------------------------------------------------

    def turnover(self, to_team: str, at: tuple[float, float]) -> None:
        self.possessor = to_team
        self.ball = self.clamp(*at)
        self.holder = None

    def displacement(self, team: str, forward: float, lateral: float) -> tuple[float, float]:
        """Move ``ball`` in the team's attacking frame; returns absolute point."""
        fx, fy = self.frame_point(team, *self.ball)
        if forward > 0.0 and fx > 60.0:
            # space compresses near the opponent goal; progress slows
            forward *= max(0.25, 1.0 - (fx - 60.0) / 55.0)
        fx = fx + forward
        fy = fy + lateral
        fx = min(max(fx, 0.0), PITCH_LENGTH - 1.0)
        fy = min(max(fy, 0.0), PITCH_WIDTH)
        return self.unframe_point(team, fx, fy)

    # --- steps -------------------------------------------------------------

    def step(self) -> None:
        if self.pending is not None:
            kind = self.pending
            self.pending = None
            self.restart(kind)
            return
        self.open_play()

    def restart(self, kind: tuple) -> None:
        name = kind[0]
        if name == "kickoff":
            team = kind[1]
            self.possessor = team
            self.ball = (PITCH_LENGTH / 2.0, GOAL_CENTER_Y)
            player = self.pick_player(team, "mid")
            end = self.displacement(team, -float(self.rng.uniform(2, 14)), float(self.rng.normal(0, 8)))
            self.emit(team, player, ActionType.PASS, ActionResult.SUCCESS, self.ball, end)
            self.ball = end
            self.holder = None
        elif name == "throw_in":
            team, at = kind[1], kind[2]
            self.possessor = team
            self.ball = at
            player = self.pick_player(team, self.zone(team, at[0]))
            ok = self.rng.random() < 0.85
            end = self.displacement(team, float(self.rng.normal(3, 6)), float(self.rng.normal(0, 7)))
            self.emit(
                team,
                player,
                ActionType.THROW_IN,
                ActionResult.SUCCESS if ok else ActionResult.FAIL,
                at,
                end,
                body_part=BodyPart.OTHER,
            )
            if ok:
                self.ball = end
                self.holder = None
            else:
                self.turnover(self.other(team), end)
        elif name == "corner":
            team = kind[1]
            self.corner(team)
        elif name == "free_kick":
            team, at = kind[1], kind[2]
            self.free_kick(team, at)

    def corner(self, team: str) -> None:
        self.possessor = team
        side = 0.0 if self.rng.random() < 0.5 else PITCH_WIDTH
        corner_abs = self.unframe_point(team, PITCH_LENGTH, side)
        self.ball = corner_abs
        taker = self.pick_player(team, "att")
        if self.rng.random() < 0.30:
            # short corner, essentially a safe pass
            end = self.displacement(team, -float(self.rng.uniform(2, 8)), float(self.rng.uniform(2, 10)) * (1 if side == 0.0 else -1))
            self.emit(team, taker, ActionType.SHORT_CORNER, ActionResult.SUCCESS, corner_abs, end)
            self.ball = end
            self.holder = None
            return
        target = self.unframe_point(
            team,
            PITCH_LENGTH - float(self.rng.uniform(2, 11)),
            GOAL_CENTER_Y + float(self.rng.normal(0, 7)),
        )
        won = self.rng.random() < 0.32 + 0.05 * self.skill_edge(team)
        self.emit(
            team,
            taker,
            ActionType.CROSSED_CORNER,
            ActionResult.SUCCESS if won else ActionResult.FAIL,
            corner_abs,
            target,
        )
        if won:
            self.ball = self.clamp(*target)
            self.holder = self.pick_player(team, "att", exclude=taker)
        else:
            self.defensive_clear(self.other(team), target)

    def free_kick(self, team: str, at: tuple[float, float]) -> None:
        self.possessor = team
        self.ball = self.clamp(*at)
        dist = self.dist_to_goal(team, *self.ball)
        taker = self.pick_player(team, self.zone(team, self.ball[0]))
        r = self.rng.random()
        if dist < 30.0 and r < 0.18 and self.cfg.shot_rate > 0:
            self.shoot(team, taker, ActionType.SHOT_FREE_KICK, conversion_scale=0.45)
            return
        if dist < 42.0 and r < 0.55:
            target = self.unframe_point(
                team,
                PITCH_LENGTH - float(self.rng.uniform(3, 12)),
                GOAL_CENTER_Y + float(self.rng.normal(0, 8)),
            )
            won = self.rng.random() < 0.34 + 0.05 * self.skill_edge(team)
            self.emit(
                team,
                taker,
                ActionType.CROSSED_FREE_KICK,
                ActionResult.SUCCESS if won else ActionResult.FAIL,
                self.ball,
                target,
            )
            if won:
                self.ball = self.clamp(*target)
                self.holder = self.pick_player(team, "att", exclude=taker)
            else:
                self.defensive_clear(self.other(team), target)
            return
        end = self.displacement(team, float(self.rng.normal(6, 5)), float(self.rng.normal(0, 9)))
        ok = self.rng.random() < 0.90
        self.emit(
            team,
            taker,
            ActionType.SHORT_FREE_KICK,
            ActionResult.SUCCESS if ok else ActionResult.FAIL,
            self.ball,
            end,
        )
        if ok:
            self.ball = end
            self.holder = None
        else:
            self.turnover(self.other(team), end)

    def defensive_clear(self, team: str, around: tuple[float, float]) -> None:
        """Defending side deals with a dangerous ball near its goal."""
        spot = self.clamp(around[0] + float(self.rng.normal(0, 3)), around[1] + float(self.rng.normal(0, 3)))
        r = self.rng.random()
        if r < 0.55:
            clearer = self.pick_player(team, "def")
            end = self.displacement_from(team, spot, float(self.rng.uniform(15, 40)), float(self.rng.normal(0, 14)))
            body = BodyPart.HEAD if self.rng.random() < 0.4 else BodyPart.FOOT
            self.possessor = team
            self.ball = spot
            self.emit(team, clearer, ActionType.CLEARANCE, ActionResult.SUCCESS, spot, end, body_part=body)
            # a clearance is a punt, not a controlled keep: loose ball
            loose_to = team if self.rng.random() < 0.45 else self.other(team)
            self.turnover(loose_to, end)
        elif r < 0.80:
            gk = self.keeper(team)
            self.possessor = team
            self.ball = spot
            self.emit(team, gk, ActionType.KEEPER_CLAIM, ActionResult.SUCCESS, spot, spot, body_part=BodyPart.NONE)
            self.holder = gk
        else:
            gk = self.keeper(team)
            self.possessor = team
            self.ball = spot
            end = self.displacement_from(team, spot, float(self.rng.uniform(10, 25)), float(self.rng.normal(0, 10)))
            self.emit(team, gk, ActionType.KEEPER_PUNCH, ActionResult.SUCCESS, spot, end, body_part=BodyPart.NONE)
            loose_to = team if self.rng.random() < 0.5 else self.other(team)
            self.turnover(loose_to, end)

    def displacement_from(self, team: str, at: tuple[float, float], forward: float, lateral: float) -> tuple[float, float]:
        fx, fy = self.frame_point(team, *at)
        fx = min(max(fx + forward, 0.0), PITCH_LENGTH)
        fy = min(max(fy + lateral, 0.0), PITCH_WIDTH)
        return self.unframe_point(team, fx, fy)

    def shoot(self, team: str, player: str, action_type: ActionType, conversion_scale: float = 1.0) -> None:
        dist = self.dist_to_goal(team, *self.ball)
        p_goal = _goal_prob(dist) * conversion_scale * (1.0 + 0.15 * self.skill_edge(team))
        p_goal = min(max(p_goal, 0.0), 0.9)
        goal_mouth = self.unframe_point(
            team, PITCH_LENGTH, GOAL_CENTER_Y + float(self.rng.normal(0, 2.5))
        )
        body = BodyPart.HEAD if self.rng.random() < 0.12 else BodyPart.FOOT
        if self.rng.random() < p_goal:
            self.emit(team, player, action_type, ActionResult.SUCCESS, self.ball, goal_mouth, body_part=body)
            self.pending = ("kickoff", self.other(team))
            self.holder = None
            return
        self.emit(team, player, action_type, ActionResult.FAIL, self.ball, goal_mouth, body_part=body)
        other = self.other(team)
        r = self.rng.random()
        if r < 0.45:
            gk = self.keeper(other)
            save_spot = self.unframe_point(other, float(self.rng.uniform(0.5, 5.0)), GOAL_CENTER_Y + float(self.rng.normal(0, 3)))
            self.possessor = other
            self.ball = save_spot
            self.emit(other, gk, ActionType.KEEPER_SAVE, ActionResult.SUCCESS, save_spot, save_spot, body_part=BodyPart.NONE)
            self.holder = gk
        elif r < 0.80:
            # wide or over: goal kick, modeled as the keeper picking up
            gk = self.keeper(other)
            spot = self.unframe_point(other, float(self.rng.uniform(3, 6)), GOAL_CENTER_Y)
            self.possessor = other
            self.ball = spot
            self.emit(other, gk, ActionType.KEEPER_PICK_UP, ActionResult.SUCCESS, spot, spot, body_part=BodyPart.NONE)
            self.holder = gk
        else:
            self.pending = ("corner", team)
            self.holder = None

    def open_play(self) -> None:
        team = self.possessor
        x, y = self.ball
        zone = self.zone(team, x)
        player = self.holder or self.pick_player(team, zone)
        self.holder = player
        dist = self.dist_to_goal(team, x, y)
        fx, fy = self.frame_point(team, x, y)

        p_shot = _shot_hazard(self.cfg.shot_rate, dist)
        wide = fx > 68.0 and (fy < 16.0 or fy > PITCH_WIDTH - 16.0)
        w_cross = _W_CROSS_WIDE if wide else 0.004
        weights = np.array(
            [
                _W_PASS,
                _W_DRIBBLE,
                _W_TAKE_ON,
                w_cross,
                _W_BAD_TOUCH,
                _W_FOUL,
                _W_OUT,
                _W_OFF_BALL_RUN,
                p_shot,
            ]
        )
        choice = int(self.rng.choice(9, p=weights / weights.sum()))

        if choice == 0:
            self.do_pass(team, player)
        elif choice == 1:
            self.do_dribble(team, player)
        elif choice == 2:
            self.do_take_on(team, player)
        elif choice == 3:
            self.do_cross(team, player)
        elif choice == 4:
            end = self.displacement(team, float(self.rng.normal(1, 2)), float(self.rng.normal(0, 2)))
            self.emit(team, player, ActionType.BAD_TOUCH, ActionResult.FAIL, self.ball, end)
            self.turnover(self.other(team), end)
        elif choice == 5:
            self.do_foul_against(team)
        elif choice == 6:
            # ball runs out of play; throw-in for either side
            side_y = 0.0 if y < PITCH_WIDTH / 2 else PITCH_WIDTH
            at = self.clamp(x + float(self.rng.normal(0, 5)), side_y)
            to_team = team if self.rng.random() < 0.6 else self.other(team)
            self.pending = ("throw_in", to_team, at)
            self.holder = None
        elif choice == 7:
            runner = self.pick_player(team, zone, exclude=player)
            start = self.clamp(x + float(self.rng.normal(0, 8)), y + float(self.rng.normal(0, 8)))
            end = self.displacement_from(team, start, float(self.rng.uniform(5, 15)), float(self.rng.normal(0, 5)))
            self.emit(team, runner, ActionType.RUN_WITHOUT_BALL, ActionResult.SUCCESS, start, end, body_part=BodyPart.NONE)
        else:
            self.shoot(team, player, ActionType.SHOT)

    def do_pass(self, team: str, player: str) -> None:
        fwd = float(self.rng.normal(self.cfg.drift_mean, self.cfg.drift_noise))
        lat = float(self.rng.normal(0, 9))
        end = self.displacement(team, fwd, lat)
        end_fx = self.frame_x(team, end[0])
        p_ok = self.cfg.pass_success_base + 0.06 * self.skill_edge(team)
        if end_fx > 78.0:
            p_ok -= 0.03  # final-third passes are a little harder
        p_ok = min(max(p_ok, 0.05), 0.97)
        roll = self.rng.random()
        if roll < p_ok:
            self.emit(team, player, ActionType.PASS, ActionResult.SUCCESS, self.ball, end)
            self.ball = end
            self.holder = self.pick_player(team, self.zone(team, end[0]), exclude=player)
            return
        offside = end_fx > 72.0 and self.rng.random() < 0.06
        result = ActionResult.OFFSIDE if offside else ActionResult.FAIL
        self.emit(team, player, ActionType.PASS, result, self.ball, end)
        other = self.other(team)
        if offside:
            self.pending = ("free_kick", other, end)
            self.holder = None
            return
        if self.rng.random() < 0.45:
            taker = self.pick_player(other, self.zone(other, end[0]))
            self.possessor = other
            self.ball = end
            grab = self.displacement_from(other, end, float(self.rng.uniform(0, 4)), float(self.rng.normal(0, 3)))
            self.emit(other, taker, ActionType.INTERCEPTION, ActionResult.SUCCESS, end, grab, body_part=BodyPart.FOOT)
            self.ball = grab
            self.holder = taker
        else:
            self.turnover(other, end)

    def do_dribble(self, team: str, player: str) -> None:
        end = self.displacement(team, float(self.rng.normal(5.0, 2.5)), float(self.rng.normal(0, 4)))
        self.emit(team, player, ActionType.DRIBBLE, ActionResult.SUCCESS, self.ball, end)
        self.ball = end

    def do_take_on(self, team: str, player: str) -> None:
        end = self.displacement(team, float(self.rng.uniform(1, 6)), float(self.rng.normal(0, 3)))
        ok = self.rng.random() < 0.46 + 0.10 * self.skill_edge(team)
        if ok:
            self.emit(team, player, ActionType.TAKE_ON, ActionResult.SUCCESS, self.ball, end)
            self.ball = end
            return
        self.emit(team, player, ActionType.TAKE_ON, ActionResult.FAIL, self.ball, end)
        other = self.other(team)
        if self.rng.random() < 0.6:
            tackler = self.pick_player(other, self.zone(other, end[0]))
            self.possessor = other
            self.ball = end
            self.emit(other, tackler, ActionType.TACKLE, ActionResult.SUCCESS, end, end)
            self.holder = tackler
        else:
            self.turnover(other, end)

    def do_cross(self, team: str, player: str) -> None:
        target = self.unframe_point(
            team,
            PITCH_LENGTH - float(self.rng.uniform(3, 12)),
            GOAL_CENTER_Y + float(self.rng.normal(0, 7)),
        )
        won = self.rng.random() < 0.30 + 0.06 * self.skill_edge(team)
        self.emit(
            team,
            player,
            ActionType.CROSS,
            ActionResult.SUCCESS if won else ActionResult.FAIL,
            self.ball,
            target,
        )
        if won:
            self.ball = self.clamp(*target)
            self.holder = self.pick_player(team, "att", exclude=player)
        else:
            self.defensive_clear(self.other(team), target)

    def do_foul_against(self, team: str) -> None:
        # the defending side fouls the player on the ball
        other = self.other(team)
        fz = self.zone(other, self.ball[0])
        fouler = self.pick_player(other, fz)
        roll = self.rng.random()
        if roll < 0.93:
            result = ActionResult.FAIL
        elif roll < 0.99:
            result = ActionResult.YELLOW_CARD
        else:
            result = ActionResult.RED_CARD
        self.emit(other, fouler, ActionType.FOUL, result, self.ball, self.ball)
        self.pending = ("free_kick", team, self.ball)
        self.holder = None

    # --- driver ------------------------------------------------------------

    def run(self) -> Game:
        n = self.cfg.n_actions
        first_half = n - n // 2
        while len(self.actions) < n:
            if self.period == 1 and len(self.actions) >= first_half:
                self.period = 2
                self.clock = max(self.clock, 2700.0)
                self.pending = ("kickoff", self.away_id)
                self.holder = None
            self.step()
        self.actions = self.actions[:n]
        # close the books on minutes
        total = self.clock
        for pid, entered in self.entered.items():
            self.minutes[pid] = max(total - entered, 0.0) / 60.0
        player_minutes = {}
        player_positions = {}
        player_birthdates = {}
        for roster in self.rosters.values():
            for pid in roster.players:
                player_minutes[pid] = round(self.minutes.get(pid, 0.0), 2)
                player_positions[pid] = roster.positions[pid]
                player_birthdates[pid] = roster.birthdates[pid]
        meta = GameMeta(
            game_id=self.game_id,
            home_team_id=self.home_id,
            away_team_id=self.away_id,
            player_minutes=player_minutes,
            player_positions=player_positions,
            player_birthdates=player_birthdates,
            attack_right=self.attack_right,
        )
        return build_game(self.actions, meta)


def generate_synthetic_game(
    cfg: SynthConfig,
    game_id: str = "g0000",
    home_team_id: str = "home",
    away_team_id: str = "away",
    home_roster: _Roster | None = None,
    away_roster: _Roster | None = None,
) -> Game:
    home = home_roster or _default_roster(home_team_id, 0)
    away = away_roster or _default_roster(away_team_id, 1)
    return _Sim(cfg, game_id, home, away).run()


LEAGUE_SIZE = 8


def _league_pairings(n_games: int) -> list[tuple[int, int]]:
    pairs = [(i, j) for i in range(LEAGUE_SIZE) for j in range(LEAGUE_SIZE) if i != j]
    return [pairs[g % len(pairs)] for g in range(n_games)]


def generate_corpus(seed: int, n_games: int, base: SynthConfig | None = None) -> list[Game]:
    """A small league of seeded games with recurring teams and players."""
    base = base or SynthConfig()
    rosters = [_default_roster(f"team{i:02d}", i) for i in range(LEAGUE_SIZE)]
    skills = [0.32 + 0.36 * i / (LEAGUE_SIZE - 1) for i in range(LEAGUE_SIZE)]
    games: list[Game] = []
    for g, (hi, ai) in enumerate(_league_pairings(n_games)):
        game_seed = int(
            np.random.SeedSequence(entropy=seed, spawn_key=(g,)).generate_state(1)[0]
        )
        cfg = replace(base, seed=game_seed, team_skill=(skills[hi], skills[ai]))
        games.append(
            generate_synthetic_game(
                cfg,
                game_id=f"g{g:04d}",
                home_roster=_Roster(
                    rosters[hi].team_id,
                    rosters[hi].players,
                    rosters[hi].positions,
                    rosters[hi].birthdates,
                ),
                away_roster=_Roster(
                    rosters[ai].team_id,
                    rosters[ai].players,
                    rosters[ai].positions,
                    rosters[ai].birthdates,
                ),
            )
        )
    return games
