from __future__ import annotations

import math
import random

import pytest

from actionvalue.actions import (
    ALLOWED_BODY_PARTS,
    ALLOWED_RESULTS,
    ActionResult,
    ActionType,
    BodyPart,
    build_game,
    GameMeta,
    goal_events,
    on_ball_actions,
    possession_after,
    validate_action,
)
from actionvalue.errors import (
    DuplicateOrdinal,
    InputError,
    UnknownTeam,
    UnsortableTimestamps,
)
from helpers import mk_action, mk_game, pass_chain


def test_pass_with_offside_is_legal():
    a = mk_action(0, result=ActionResult.OFFSIDE)
    assert validate_action(a) == []


def test_interception_must_succeed():
    a = mk_action(0, kind=ActionType.INTERCEPTION, result=ActionResult.FAIL)
    assert validate_action(a) == ["interception is always success"]


def test_out_of_bounds_coordinate_reported():
    a = mk_action(0, start=(200.0, 34.0))
    assert validate_action(a) == ["start_x out of pitch bounds"]


def test_multiple_violations_all_reported():
    a = mk_action(
        0,
        start=(200.0, -3.0),
        kind=ActionType.INTERCEPTION,
        result=ActionResult.FAIL,
    )
    found = validate_action(a)
    assert "start_x out of pitch bounds" in found
    assert "start_y out of pitch bounds" in found
    assert "interception is always success" in found


def test_validate_accepts_exactly_the_legal_result_pairs():
    for kind in ActionType:
        for result in ActionResult:
            a = mk_action(0, kind=kind, result=result)
            ok = not any("result" in v or "always" in v for v in validate_action(a))
            assert ok == (result in ALLOWED_RESULTS[kind]), (kind, result)


def test_validate_accepts_exactly_the_legal_body_parts():
    for kind in ActionType:
        for body in BodyPart:
            a = mk_action(0, kind=kind, body=body)
            ok = not any("body part" in v for v in validate_action(a))
            assert ok == (body in ALLOWED_BODY_PARTS[kind]), (kind, body)


def test_build_game_sorts_actions():
    acts = pass_chain(5)
    rng = random.Random(4)
    for _ in range(5):
        shuffled = acts[:]
        rng.shuffle(shuffled)
        game = mk_game(shuffled)
        times = [a.start_time for a in game.actions]
        assert times == sorted(times)
        assert [a.action_id for a in game.actions] == list(range(5))


def test_build_game_orders_periods_before_times():
    a0 = mk_action(0, period=2, t=10.0)
    a1 = mk_action(1, period=1, t=400.0)
    game = mk_game([a0, a1])
    assert [a.period for a in game.actions] == [1, 2]


def test_build_game_rejects_third_team():
    acts = [mk_action(0), mk_action(1, team="X")]
    with pytest.raises(UnknownTeam):
        mk_game(acts)


def test_build_game_rejects_duplicate_ordinals():
    acts = [mk_action(0), mk_action(0, t=9.0)]
    with pytest.raises(DuplicateOrdinal):
        mk_game(acts)


def test_build_game_rejects_nan_times():
    with pytest.raises(UnsortableTimestamps):
        mk_game([mk_action(0, t=math.nan)])


def test_build_game_accepts_empty():
    game = mk_game([])
    assert game.actions == ()


def test_build_game_checks_declared_score():
    acts = pass_chain(3) + [
        mk_action(3, kind=ActionType.SHOT, result=ActionResult.SUCCESS)
    ]
    game = mk_game(acts, final_score=(1, 0))
    assert len(game.actions) == 4
    with pytest.raises(InputError):
        mk_game(acts, final_score=(2, 0))


def test_goal_events_successful_shot():
    acts = pass_chain(7) + [
        mk_action(7, kind=ActionType.SHOT, result=ActionResult.SUCCESS)
    ]
    game = mk_game(acts)
    assert goal_events(game) == [(7, "H")]


def test_goal_events_own_goal_credits_other_team():
    acts = [
        mk_action(
            0,
            team="V",
            player="v1",
            kind=ActionType.CLEARANCE,
            result=ActionResult.OWN_GOAL,
        )
    ]
    game = mk_game(acts)
    assert goal_events(game) == [(0, "H")]


def test_goal_events_empty_without_goals(corpus6):
    game = mk_game(pass_chain(10))
    assert goal_events(game) == []
    for g in corpus6:
        events = goal_events(g)
        home = sum(1 for e in events if e.team_id == g.home_team_id)
        away = sum(1 for e in events if e.team_id == g.away_team_id)
        assert home + away == len(events)


def test_possession_flips_on_turnover_results():
    game = mk_game(pass_chain(1))
    keeps = {ActionResult.SUCCESS, ActionResult.OWN_GOAL}
    for result in ActionResult:
        a = mk_action(0, result=result)
        holder = possession_after(a, game)
        assert holder == ("H" if result in keeps else "V"), result


def test_on_ball_actions_drops_off_ball_runs():
    acts = pass_chain(3)
    acts.append(
        mk_action(
            3,
            kind=ActionType.RUN_WITHOUT_BALL,
            body=BodyPart.NONE,
            result=ActionResult.SUCCESS,
        )
    )
    game = mk_game(acts)
    assert len(game.actions) == 4
    assert len(on_ball_actions(game)) == 3


def test_attacks_right_defaults_with_halftime_swap():
    game = mk_game(pass_chain(2))
    assert game.attacks_right("H", 1) is True
    assert game.attacks_right("H", 2) is False
    assert game.attacks_right("V", 1) is False
    assert game.attacks_right("V", 2) is True


def test_other_team_rejects_stranger():
    game = mk_game(pass_chain(1))
    assert game.other_team("H") == "V"
    with pytest.raises(UnknownTeam):
        game.other_team("Z")
