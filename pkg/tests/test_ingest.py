from __future__ import annotations

import json

import numpy as np
import pytest

from actionvalue.actions import ActionResult, ActionType
from actionvalue.errors import InputError, MalformedLine, MixedGames, UnmappedType
from actionvalue.ingest import (
    EventMapping,
    RawEvent,
    convert_event,
    parse_events,
    parse_events_file,
    scale_to_pitch,
    scale_to_provider,
)


def ev(**kw):
    base = dict(ts=3.0, type_name="pass", team="H", player="p1", x=50.0, y=50.0)
    base.update(kw)
    return RawEvent(**base)


def test_rescale_maps_provider_midfield_to_pitch_center():
    assert scale_to_pitch(50.0, 50.0) == (52.5, 34.0)
    assert scale_to_pitch(100.0, 100.0) == (105.0, 68.0)
    assert scale_to_pitch(0.0, 0.0) == (0.0, 0.0)


def test_rescale_round_trips_within_1e9():
    rng = np.random.default_rng(0)
    for _ in range(500):
        x, y = rng.uniform(0, 100), rng.uniform(0, 100)
        px, py = scale_to_pitch(x, y)
        bx, by = scale_to_provider(px, py)
        assert abs(bx - x) < 1e-9 and abs(by - y) < 1e-9


def test_convert_complete_pass():
    a = convert_event(ev(outcome="complete"))
    assert a.action_type is ActionType.PASS
    assert a.result is ActionResult.SUCCESS
    assert (a.start_x, a.start_y) == (52.5, 34.0)


def test_convert_unmapped_type_skips_or_raises():
    assert convert_event(ev(type_name="ball_recovery")) is None
    with pytest.raises(UnmappedType):
        convert_event(ev(type_name="ball_recovery"), strict=True)


def test_convert_ignored_type_skips_even_in_strict_mode():
    assert convert_event(ev(type_name="pressure"), strict=True) is None


def test_convert_shot_goal():
    a = convert_event(ev(type_name="shot", outcome="goal"))
    assert a.action_type is ActionType.SHOT
    assert a.result is ActionResult.SUCCESS


def test_convert_goal_outcome_not_success_for_pass():
    # "goal" is a shot vocabulary word; for a pass the default result applies
    a = convert_event(ev(outcome="goal"))
    assert a.action_type is ActionType.PASS
    assert a.result is ActionResult.SUCCESS


def test_convert_missing_end_point_copies_start():
    a = convert_event(ev(end_x=None, end_y=None))
    assert (a.end_x, a.end_y) == (a.start_x, a.start_y)


def test_convert_header_tag_selects_body_part():
    a = convert_event(ev(tags=frozenset({"header"})))
    assert a.body_part.value == "head"


def lines_for(events, meta=None):
    out = []
    if meta is not None:
        out.append(json.dumps(meta))
    for e in events:
        out.append(json.dumps(e))
    return out


def test_parse_events_builds_a_game():
    events = [
        dict(ts=5.0 * i, type_name="pass", team="H", player=f"p{i%3}",
             x=40.0 + i, y=50.0, outcome="complete")
        for i in range(10)
    ]
    game = parse_events(lines_for(events, meta={"kind": "meta", "home_team": "H",
                                                "away_team": "V", "game_id": "g9"}))
    assert game.game_id == "g9"
    assert game.home_team_id == "H" and game.away_team_id == "V"
    assert len(game.actions) <= 10
    assert [a.action_id for a in game.actions] == list(range(len(game.actions)))


def test_parse_events_reports_bad_line_number():
    lines = lines_for(
        [dict(ts=1.0, type_name="pass", team="H", player="p", x=1, y=1)] * 2
    )
    lines.insert(2, '{"ts": 3.0, "type_name":')  # truncated record on line 3
    with pytest.raises(MalformedLine) as err:
        parse_events(lines)
    assert "3" in str(err.value)


def test_parse_events_rejects_two_game_ids():
    lines = lines_for(
        [
            dict(ts=1.0, type_name="pass", team="H", player="p", x=1, y=1,
                 game_id="a"),
            dict(ts=2.0, type_name="pass", team="H", player="p", x=1, y=1,
                 game_id="b"),
        ]
    )
    with pytest.raises(MixedGames):
        parse_events(lines)


def test_parse_events_file_round_trip(tmp_path):
    path = tmp_path / "events.jsonl"
    events = [
        dict(ts=2.0, type_name="pass", team="H", player="p1", x=30, y=40,
             outcome="complete"),
        dict(ts=6.0, type_name="shot", team="H", player="p1", x=90, y=50,
             outcome="goal"),
    ]
    path.write_text("\n".join(lines_for(events)) + "\n", encoding="utf-8")
    game = parse_events_file(path)
    assert [a.action_type.value for a in game.actions] == ["pass", "shot"]


def test_mapping_from_toml(tmp_path):
    path = tmp_path / "map.toml"
    path.write_text(
        'ignore = ["noise"]\n[types]\nkick = "pass"\n[outcomes]\nok = "success"\n',
        encoding="utf-8",
    )
    mapping = EventMapping.from_toml(path)
    a = convert_event(ev(type_name="kick", outcome="ok"), mapping)
    assert a.action_type is ActionType.PASS
    assert convert_event(ev(type_name="noise"), mapping, strict=True) is None


def test_mapping_rejects_unknown_canonical_name():
    with pytest.raises(InputError):
        EventMapping.from_dict({"types": {"kick": "no_such_action"}})


def test_mapping_illegal_result_falls_back_to_default():
    mapping = EventMapping.from_dict(
        {"types": {"grab": "interception"}, "outcomes": {"lost": "fail"}}
    )
    a = convert_event(ev(type_name="grab", outcome="lost"), mapping)
    # interceptions are always success; the illegal mapping is ignored
    assert a.result is ActionResult.SUCCESS
