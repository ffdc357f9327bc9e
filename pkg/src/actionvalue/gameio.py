"""Persistence for games: action tables and the metadata sidecar.

Two interchangeable action formats:

* CSV with the fixed column order
  ``game_id, action_id, period, start_time, end_time, start_x, start_y,
  end_x, end_y, player_id, team_id, action_type, body_part, result``
* JSONL, one action object per line with the same keys.

Action tables do not carry team roles, kickoff directions or minutes, so a
corpus directory pairs per-game action files with one ``meta.csv``. A lone
action table can still be loaded: the first acting team is assumed to be the
home side and kickoff directions take the standard coin toss. That is enough
for valuation; ratings need real metadata.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path

from .actions import (
    Action,
    ActionResult,
    ActionType,
    BodyPart,
    Game,
    GameMeta,
    build_game,
    default_attack_right,
)
from .errors import InputError, MalformedLine, MissingInput
from .fileio import atomic_write_text, fmt_float, require_dir, require_file

ACTION_COLUMNS = (
    "game_id",
    "action_id",
    "period",
    "start_time",
    "end_time",
    "start_x",
    "start_y",
    "end_x",
    "end_y",
    "player_id",
    "team_id",
    "action_type",
    "body_part",
    "result",
)

META_COLUMNS = (
    "game_id",
    "home_team_id",
    "away_team_id",
    "team_id",
    "player_id",
    "position",
    "minutes",
    "birthdate",
    "attacks_right_p1",
    "attacks_right_p2",
)


def _action_row(game_id: str, a: Action) -> list[str]:
    return [
        game_id,
        str(a.action_id),
        str(a.period),
        fmt_float(a.start_time),
        fmt_float(a.end_time),
        fmt_float(a.start_x),
        fmt_float(a.start_y),
        fmt_float(a.end_x),
        fmt_float(a.end_y),
        a.player_id,
        a.team_id,
        a.action_type.value,
        a.body_part.value,
        a.result.value,
    ]


def _parse_action(record: dict[str, str]) -> Action:
    return Action(
        action_id=int(record["action_id"]),
        period=int(record["period"]),
        start_time=float(record["start_time"]),
        end_time=float(record["end_time"]),
        start_x=float(record["start_x"]),
        start_y=float(record["start_y"]),
        end_x=float(record["end_x"]),
        end_y=float(record["end_y"]),
        player_id=record["player_id"],
        team_id=record["team_id"],
        action_type=ActionType(record["action_type"]),
        body_part=BodyPart(record["body_part"]),
        result=ActionResult(record["result"]),
    )


def actions_csv_text(game: Game) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ACTION_COLUMNS)
    for a in game.actions:
        writer.writerow(_action_row(game.game_id, a))
    return buf.getvalue()


def write_actions_csv(game: Game, path: str | os.PathLike[str]) -> None:
    atomic_write_text(path, actions_csv_text(game))


def write_actions_jsonl(game: Game, path: str | os.PathLike[str]) -> None:
    lines = []
    for a in game.actions:
        record = dict(zip(ACTION_COLUMNS, _action_row(game.game_id, a)))
        lines.append(json.dumps(record, sort_keys=True))
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def read_action_records(path: str | os.PathLike[str]) -> list[dict[str, str]]:
    """Read an action table (CSV or JSONL by extension) into string records."""
    p = require_file(path)
    records: list[dict[str, str]] = []
    if p.suffix == ".jsonl":
        with open(p, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise MalformedLine(line_no, f"invalid JSON: {exc.msg}") from exc
                records.append({k: str(v) for k, v in obj.items()})
    else:
        with open(p, encoding="utf-8", newline="") as fh:
            reader = csv.DictReader(fh)
            missing = set(ACTION_COLUMNS) - set(reader.fieldnames or ())
            if missing:
                raise InputError(f"{p}: action table missing columns {sorted(missing)}")
            records.extend(reader)
    for i, rec in enumerate(records, start=1):
        absent = [c for c in ACTION_COLUMNS if rec.get(c) in (None, "")]
        if absent:
            raise MalformedLine(i, f"missing fields {absent}")
    return records


def _game_from_records(
    records: list[dict[str, str]], meta: GameMeta | None = None
) -> Game:
    if not records:
        raise InputError("action table holds no actions")
    game_ids = {r["game_id"] for r in records}
    if len(game_ids) != 1:
        raise InputError(f"action table holds several game ids: {sorted(game_ids)}")
    game_id = game_ids.pop()
    actions = [_parse_action(r) for r in records]
    if meta is None:
        teams: list[str] = []
        for r in records:
            if r["team_id"] not in teams:
                teams.append(r["team_id"])
        home = teams[0]
        away = teams[1] if len(teams) > 1 else f"{home}_opponent"
        meta = GameMeta(game_id=game_id, home_team_id=home, away_team_id=away)
    elif meta.game_id != game_id:
        raise InputError(
            f"metadata is for game {meta.game_id!r} but actions are for {game_id!r}"
        )
    return build_game(actions, meta)


def read_game(
    path: str | os.PathLike[str], meta: GameMeta | None = None
) -> Game:
    return _game_from_records(read_action_records(path), meta)


def meta_csv_text(games: list[Game]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(META_COLUMNS)
    for g in sorted(games, key=lambda g: g.game_id):
        players = sorted(g.player_minutes)
        team_of = _player_teams(g)
        for pid in players:
            team = team_of.get(pid, g.home_team_id)
            writer.writerow(
                [
                    g.game_id,
                    g.home_team_id,
                    g.away_team_id,
                    team,
                    pid,
                    g.player_positions.get(pid, ""),
                    fmt_float(g.player_minutes[pid]),
                    g.player_birthdates.get(pid, ""),
                    "1" if g.attack_right[(team, 1)] else "0",
                    "1" if g.attack_right[(team, 2)] else "0",
                ]
            )
    return buf.getvalue()


def _player_teams(game: Game) -> dict[str, str]:
    teams: dict[str, str] = {}
    for a in game.actions:
        teams.setdefault(a.player_id, a.team_id)
    return teams


def write_meta_csv(games: list[Game], path: str | os.PathLike[str]) -> None:
    atomic_write_text(path, meta_csv_text(games))


class PlayerGameMeta:
    """One meta.csv row; plain attribute bag."""

    __slots__ = tuple(META_COLUMNS)

    def __init__(self, **kw: str) -> None:
        for col in META_COLUMNS:
            setattr(self, col, kw[col])


def read_meta_csv(path: str | os.PathLike[str]) -> list[PlayerGameMeta]:
    p = require_file(path)
    with open(p, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        missing = set(META_COLUMNS) - set(reader.fieldnames or ())
        if missing:
            raise InputError(f"{p}: meta table missing columns {sorted(missing)}")
        return [PlayerGameMeta(**{c: row[c] for c in META_COLUMNS}) for row in reader]


def game_meta_from_rows(rows: list[PlayerGameMeta]) -> dict[str, GameMeta]:
    """Regroup meta rows into per-game GameMeta."""
    by_game: dict[str, list[PlayerGameMeta]] = {}
    for row in rows:
        by_game.setdefault(row.game_id, []).append(row)
    out: dict[str, GameMeta] = {}
    for game_id, group in by_game.items():
        home = group[0].home_team_id
        away = group[0].away_team_id
        attack_right = default_attack_right(home, away)
        for r in group:
            attack_right[(r.team_id, 1)] = r.attacks_right_p1 == "1"
            attack_right[(r.team_id, 2)] = r.attacks_right_p2 == "1"
        out[game_id] = GameMeta(
            game_id=game_id,
            home_team_id=home,
            away_team_id=away,
            player_minutes={r.player_id: float(r.minutes) for r in group},
            player_positions={r.player_id: r.position for r in group if r.position},
            player_birthdates={r.player_id: r.birthdate for r in group if r.birthdate},
            attack_right=attack_right,
        )
    return out


def load_corpus(directory: str | os.PathLike[str]) -> list[Game]:
    """Load every per-game action table in ``directory`` (with meta.csv if present)."""
    d = require_dir(directory)
    meta_path = d / "meta.csv"
    metas: dict[str, GameMeta] = {}
    if meta_path.is_file():
        metas = game_meta_from_rows(read_meta_csv(meta_path))
    games: list[Game] = []
    paths = sorted(
        p
        for p in d.iterdir()
        if p.suffix in (".csv", ".jsonl") and p.name != "meta.csv"
    )
    if not paths:
        raise MissingInput(f"no action tables found in {d}")
    for p in paths:
        records = read_action_records(p)
        game_id = records[0]["game_id"]
        games.append(_game_from_records(records, metas.get(game_id)))
    games.sort(key=lambda g: g.game_id)
    return games
