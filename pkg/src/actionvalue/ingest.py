"""Convert raw provider event logs into the unified action language.

Providers describe the same game in slightly different vocabularies, so the
translation lives in data, not code: a TOML mapping file names the provider's
type/outcome/tag words and their canonical equivalents. A built-in default
mapping ships with the package.

Input streams are line-delimited JSON, one event per line, all for a single
game. A line with ``"kind": "meta"`` may declare home/away teams and is not
an event. Unmapped event types are skipped with a logged reason by default;
strict mode turns them into errors.

Provider coordinates live on a [0,100] x [0,100] grid and are rescaled
affinely onto the 105x68 pitch.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Iterator

import tomli

from .actions import (
    ALLOWED_BODY_PARTS,
    ALLOWED_RESULTS,
    Action,
    ActionResult,
    ActionType,
    BodyPart,
    Game,
    GameMeta,
    PITCH_LENGTH,
    PITCH_WIDTH,
    build_game,
)
from .errors import InputError, MalformedLine, MixedGames, UnmappedType
from .fileio import require_file

log = logging.getLogger(__name__)

PROVIDER_RANGE = 100.0


def scale_to_pitch(x: float, y: float) -> tuple[float, float]:
    """Provider [0,100] grid -> meters on the 105x68 pitch."""
    cx = min(max(x, 0.0), PROVIDER_RANGE)
    cy = min(max(y, 0.0), PROVIDER_RANGE)
    return cx * (PITCH_LENGTH / PROVIDER_RANGE), cy * (PITCH_WIDTH / PROVIDER_RANGE)


def scale_to_provider(x: float, y: float) -> tuple[float, float]:
    """Inverse of :func:`scale_to_pitch` for in-range points."""
    return x * (PROVIDER_RANGE / PITCH_LENGTH), y * (PROVIDER_RANGE / PITCH_WIDTH)


@dataclass(frozen=True)
class RawEvent:
    """One provider event, as found in the log."""

    ts: float
    type_name: str
    team: str
    player: str
    x: float
    y: float
    end_x: float | None = None
    end_y: float | None = None
    end_ts: float | None = None
    outcome: str = ""
    tags: frozenset[str] = frozenset()
    period: int = 1
    game_id: str | None = None

    @classmethod
    def from_record(cls, obj: dict, line_no: int) -> "RawEvent":
        try:
            tags = obj.get("tags", ())
            return cls(
                ts=float(obj["ts"]),
                type_name=str(obj["type_name"]),
                team=str(obj["team"]),
                player=str(obj["player"]),
                x=float(obj["x"]),
                y=float(obj["y"]),
                end_x=None if obj.get("end_x") is None else float(obj["end_x"]),
                end_y=None if obj.get("end_y") is None else float(obj["end_y"]),
                end_ts=None if obj.get("end_ts") is None else float(obj["end_ts"]),
                outcome=str(obj.get("outcome", "")),
                tags=frozenset(str(t) for t in tags),
                period=int(obj.get("period", 1)),
                game_id=None if obj.get("game_id") is None else str(obj["game_id"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedLine(line_no, f"bad event record: {exc!r}") from exc


# Body part when no tag says otherwise.
_DEFAULT_BODY_PART: dict[ActionType, BodyPart] = {t: BodyPart.FOOT for t in ActionType}
_DEFAULT_BODY_PART[ActionType.THROW_IN] = BodyPart.OTHER
for _t in (
    ActionType.KEEPER_SAVE,
    ActionType.KEEPER_CLAIM,
    ActionType.KEEPER_PUNCH,
    ActionType.KEEPER_PICK_UP,
):
    _DEFAULT_BODY_PART[_t] = BodyPart.NONE


def _default_result(action_type: ActionType) -> ActionResult:
    allowed = ALLOWED_RESULTS[action_type]
    if ActionResult.SUCCESS in allowed:
        return ActionResult.SUCCESS
    return ActionResult.FAIL


@dataclass(frozen=True)
class EventMapping:
    """Provider vocabulary -> canonical vocabulary."""

    types: dict[str, ActionType]
    ignored: frozenset[str]
    outcomes: dict[str, ActionResult]
    outcomes_by_type: dict[ActionType, dict[str, ActionResult]] = field(
        default_factory=dict
    )
    body_parts: dict[str, BodyPart] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: dict) -> "EventMapping":
        try:
            types = {k: ActionType(v) for k, v in data.get("types", {}).items()}
            ignored = frozenset(data.get("ignore", ()))
            outcomes: dict[str, ActionResult] = {}
            by_type: dict[ActionType, dict[str, ActionResult]] = {}
            for key, value in data.get("outcomes", {}).items():
                if isinstance(value, dict):
                    by_type[ActionType(key)] = {
                        o: ActionResult(r) for o, r in value.items()
                    }
                else:
                    outcomes[key] = ActionResult(value)
            body_parts = {
                k: BodyPart(v) for k, v in data.get("body_parts", {}).items()
            }
        except ValueError as exc:
            raise InputError(f"mapping names an unknown canonical value: {exc}") from exc
        return cls(
            types=types,
            ignored=ignored,
            outcomes=outcomes,
            outcomes_by_type=by_type,
            body_parts=body_parts,
        )

    @classmethod
    def from_toml(cls, path: str | os.PathLike[str]) -> "EventMapping":
        p = require_file(path)
        with open(p, "rb") as fh:
            try:
                data = tomli.load(fh)
            except tomli.TOMLDecodeError as exc:
                raise InputError(f"{p}: invalid mapping TOML: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def default(cls) -> "EventMapping":
        ref = resources.files("actionvalue.data").joinpath("default_mapping.toml")
        with ref.open("rb") as fh:
            return cls.from_dict(tomli.load(fh))

    def result_for(self, action_type: ActionType, outcome: str) -> ActionResult:
        per_type = self.outcomes_by_type.get(action_type, {})
        result = per_type.get(outcome) or self.outcomes.get(outcome)
        if result is None:
            if outcome:
                log.debug("unmapped outcome %r for %s", outcome, action_type.value)
            return _default_result(action_type)
        if result not in ALLOWED_RESULTS[action_type]:
            log.debug(
                "outcome %r maps to %s, illegal for %s; using default",
                outcome,
                result.value,
                action_type.value,
            )
            return _default_result(action_type)
        return result

    def body_part_for(self, action_type: ActionType, tags: frozenset[str]) -> BodyPart:
        for tag in sorted(tags):
            part = self.body_parts.get(tag)
            if part is not None and part in ALLOWED_BODY_PARTS[action_type]:
                return part
        return _DEFAULT_BODY_PART[action_type]


def convert_event(
    e: RawEvent,
    mapping: EventMapping | None = None,
    *,
    strict: bool = False,
    ordinal: int = 0,
) -> Action | None:
    """Map one raw event to an Action, or None when the event is skippable."""
    mapping = mapping or EventMapping.default()
    if e.type_name in mapping.ignored:
        return None
    action_type = mapping.types.get(e.type_name)
    if action_type is None:
        if strict:
            raise UnmappedType(f"no mapping for event type {e.type_name!r}")
        log.info("skipping unmapped event type %r", e.type_name)
        return None
    start_x, start_y = scale_to_pitch(e.x, e.y)
    if e.end_x is None or e.end_y is None:
        end_x, end_y = start_x, start_y
    else:
        end_x, end_y = scale_to_pitch(e.end_x, e.end_y)
    start_time = max(e.ts, 0.0)
    end_time = start_time if e.end_ts is None else max(e.end_ts, start_time)
    return Action(
        action_id=ordinal,
        period=e.period,
        start_time=start_time,
        end_time=end_time,
        start_x=start_x,
        start_y=start_y,
        end_x=end_x,
        end_y=end_y,
        player_id=e.player,
        team_id=e.team,
        action_type=action_type,
        body_part=mapping.body_part_for(action_type, e.tags),
        result=mapping.result_for(action_type, e.outcome),
    )


def _iter_records(lines: Iterable[str]) -> Iterator[tuple[int, dict]]:
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedLine(line_no, f"invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise MalformedLine(line_no, "event record is not an object")
        yield line_no, obj


def parse_events(
    lines: Iterable[str],
    mapping: EventMapping | None = None,
    *,
    strict: bool = False,
) -> Game:
    """Parse one game's event stream into a Game."""
    mapping = mapping or EventMapping.default()
    events: list[RawEvent] = []
    declared_home: str | None = None
    declared_away: str | None = None
    declared_game: str | None = None
    for line_no, obj in _iter_records(lines):
        if obj.get("kind") == "meta":
            declared_home = obj.get("home_team", declared_home)
            declared_away = obj.get("away_team", declared_away)
            declared_game = obj.get("game_id", declared_game)
            continue
        events.append(RawEvent.from_record(obj, line_no))

    game_ids = {e.game_id for e in events if e.game_id is not None}
    if declared_game is not None:
        game_ids.add(declared_game)
    if len(game_ids) > 1:
        raise MixedGames(f"stream holds several game ids: {sorted(game_ids)}")
    game_id = game_ids.pop() if game_ids else "game"

    actions: list[Action] = []
    for e in events:
        a = convert_event(e, mapping, strict=strict, ordinal=len(actions))
        if a is not None:
            actions.append(a)

    teams: list[str] = []
    for e in events:
        if e.team not in teams:
            teams.append(e.team)
    home = declared_home or (teams[0] if teams else "home")
    candidates = [t for t in teams if t != home]
    away = declared_away or (candidates[0] if candidates else f"{home}_opponent")
    return build_game(
        actions, GameMeta(game_id=game_id, home_team_id=home, away_team_id=away)
    )


def parse_events_file(
    path: str | os.PathLike[str],
    mapping: EventMapping | None = None,
    *,
    strict: bool = False,
) -> Game:
    p = require_file(path)
    with open(p, encoding="utf-8") as fh:
        return parse_events(fh, mapping, strict=strict)
