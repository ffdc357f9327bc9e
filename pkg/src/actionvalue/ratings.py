"""Aggregation of action values into player, team, and line ratings.

Exactness contract: every aggregate that a regrouping identity constrains
is defined as the plain sum of its reported parts in one documented order,
and the parts are ``math.fsum`` over raw action values. Concretely:

* ``per_action_type[t]`` = fsum of the player's values of type t;
* ``total_value``        = sum of per-type totals in canonical type order;
* ``profile[t]``         = per-type total x (90 / minutes);
* ``rating_per90``       = sum of profile values in canonical type order;
* team-game rating       = sum of per-player fsums, players sorted by id;
* line averages          = per-line totals / games, and the team average is
                           the sum of line averages in fixed line order.

So "parts sum to the whole" holds bit for bit, not just approximately.
rating_per90 * minutes / 90 recovers total_value only to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import date

from .actions import ON_BALL_TYPES
from .errors import InputError, ZeroMinutes
from .gameio import PlayerGameMeta
from .valuation import ActionValue

TYPE_ORDER = tuple(t.value for t in ON_BALL_TYPES)
LINES = ("GK", "DEF", "MID", "FWD")
UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class PlayerRating:
    player_id: str
    window: str
    team_id: str
    position: str
    birthdate: str
    minutes: float
    n_actions: int
    n_games: int
    per_action_type: dict[str, float]
    total_value: float
    profile_per90: dict[str, float]
    rating_per90: float
    actions_per90: float
    mean_value_per_action: float


@dataclass(frozen=True)
class TeamGameRating:
    team_id: str
    game_id: str
    rating: float


@dataclass(frozen=True)
class LineContribution:
    team_id: str
    n_games: int
    per_line: dict[str, float]  # average value per game, by line
    team_average: float


def _per_type_totals(values: list[ActionValue]) -> dict[str, float]:
    buckets: dict[str, list[float]] = {t: [] for t in TYPE_ORDER}
    for v in values:
        buckets[v.action_type].append(v.total)
    return {t: math.fsum(buckets[t]) for t in TYPE_ORDER}


def player_rating(
    values: list[ActionValue],
    minutes: float,
    window: str = "all",
    team_id: str = "",
    position: str = "",
    birthdate: str = "",
    n_games: int = 0,
) -> PlayerRating:
    """Rate one player from their action values and minutes played."""
    if minutes <= 0:
        raise ZeroMinutes(f"player needs positive minutes, got {minutes}")
    per_type = _per_type_totals(values)
    total_value = sum(per_type[t] for t in TYPE_ORDER)
    scale = 90.0 / minutes
    profile = {t: per_type[t] * scale for t in TYPE_ORDER}
    rating_per90 = sum(profile[t] for t in TYPE_ORDER)
    n_actions = len(values)
    actions_per90 = n_actions * scale
    mean_value = total_value / n_actions if n_actions else 0.0
    return PlayerRating(
        player_id=values[0].player_id if values else "",
        window=window,
        team_id=team_id,
        position=position,
        birthdate=birthdate,
        minutes=float(minutes),
        n_actions=n_actions,
        n_games=n_games,
        per_action_type=per_type,
        total_value=total_value,
        profile_per90=profile,
        rating_per90=rating_per90,
        actions_per90=actions_per90,
        mean_value_per_action=mean_value,
    )


def _modal(labels: list[str]) -> str:
    """Most frequent label; ties resolve to the lexicographically smallest."""
    if not labels:
        return ""
    counts: dict[str, int] = {}
    for lab in labels:
        counts[lab] = counts.get(lab, 0) + 1
    return min(counts, key=lambda lab: (-counts[lab], lab))


def compute_player_ratings(
    values: list[ActionValue],
    meta: list[PlayerGameMeta],
    window: str = "all",
) -> list[PlayerRating]:
    """One rating per player with metadata, sorted by player_id.

    Minutes, position (modal over games), team (modal), and birthdate come
    from metadata. A player with recorded actions but no positive minutes
    in the metadata is an error.
    """
    by_player: dict[str, list[ActionValue]] = {}
    for v in values:
        by_player.setdefault(v.player_id, []).append(v)
    meta_by_player: dict[str, list[PlayerGameMeta]] = {}
    for row in meta:
        meta_by_player.setdefault(row.player_id, []).append(row)

    ratings: list[PlayerRating] = []
    for pid in sorted(set(by_player) | set(meta_by_player)):
        rows = meta_by_player.get(pid, [])
        minutes = math.fsum(float(r.minutes) for r in rows)
        if minutes <= 0:
            if pid in by_player:
                raise ZeroMinutes(
                    f"player {pid} has recorded actions but no minutes in metadata"
                )
            continue  # never played and never acted: nothing to rate
        rating = player_rating(
            by_player.get(pid, []),
            minutes,
            window=window,
            team_id=_modal([r.team_id for r in rows]),
            position=_modal([r.position for r in rows]),
            birthdate=next((r.birthdate for r in rows if r.birthdate), ""),
            n_games=len({r.game_id for r in rows}),
        )
        if not rating.player_id:
            rating = replace(rating, player_id=pid)
        ratings.append(rating)
    return ratings


def _parse_date(text: str) -> date | None:
    try:
        return date.fromisoformat(text)
    except ValueError:
        return None


def leaderboard(
    ratings: list[PlayerRating],
    min_minutes: float = 0.0,
    position: str | None = None,
    born_after: str | None = None,
    exclude_teams: frozenset[str] | set[str] = frozenset(),
) -> list[PlayerRating]:
    """Filter then sort descending by rating_per90, ties by player_id.

    ``born_after`` keeps players born strictly later than the cutoff date
    (ISO format). Players with an unparseable birthdate are dropped by that
    filter.
    """
    cutoff = _parse_date(born_after) if born_after else None
    rows = []
    for r in ratings:
        if r.minutes < min_minutes:
            continue
        if position is not None and r.position != position:
            continue
        if cutoff is not None:
            born = _parse_date(r.birthdate)
            if born is None or born <= cutoff:
                continue
        if r.team_id in exclude_teams:
            continue
        rows.append(r)
    return sorted(rows, key=lambda r: (-r.rating_per90, r.player_id))


def action_type_profile(
    values: list[ActionValue],
    minutes: float,
    types: list[str] | None = None,
) -> dict[str, float]:
    """Per-90 value totals by action type; all 21 types when unfiltered."""
    if minutes <= 0:
        raise ZeroMinutes(f"profile needs positive minutes, got {minutes}")
    per_type = _per_type_totals(values)
    scale = 90.0 / minutes
    wanted = TYPE_ORDER if types is None else tuple(types)
    return {t: per_type[t] * scale for t in wanted}


def moving_average(series: list[float], window: int = 15) -> list[float]:
    """Trailing mean over the last min(window, t+1) points."""
    if window < 1:
        raise InputError(f"moving average window must be >= 1, got {window}")
    out = []
    for t in range(len(series)):
        lo = max(0, t - window + 1)
        out.append(math.fsum(series[lo : t + 1]) / (t + 1 - lo))
    return out


def _player_game_totals(
    values: list[ActionValue],
) -> dict[tuple[str, str], dict[str, float]]:
    """(game_id, team_id) -> player_id -> fsum of that player's values."""
    cells: dict[tuple[str, str], dict[str, list[float]]] = {}
    for v in values:
        cell = cells.setdefault((v.game_id, v.team_id), {})
        cell.setdefault(v.player_id, []).append(v.total)
    return {
        key: {pid: math.fsum(vals) for pid, vals in players.items()}
        for key, players in cells.items()
    }


def team_ratings(values: list[ActionValue]) -> list[TeamGameRating]:
    """Per team-game rating = sum of its players' in-game totals."""
    cells = _player_game_totals(values)
    out = []
    for (game_id, team_id) in sorted(cells):
        players = cells[(game_id, team_id)]
        rating = sum(players[pid] for pid in sorted(players))
        out.append(TeamGameRating(team_id=team_id, game_id=game_id, rating=rating))
    return out


def line_contributions(
    values: list[ActionValue],
    position_map: dict[str, str],
) -> list[LineContribution]:
    """Average per-game value by line (GK/DEF/MID/FWD) for each team.

    Players whose position is missing or not a known line fall into the
    "unclassified" bucket, so the line averages always sum to the team
    average.
    """
    cells = _player_game_totals(values)
    team_games: dict[str, list[tuple[str, dict[str, float]]]] = {}
    for (game_id, team_id), players in cells.items():
        team_games.setdefault(team_id, []).append((game_id, players))
    out = []
    all_lines = LINES + (UNCLASSIFIED,)
    for team_id in sorted(team_games):
        games = sorted(team_games[team_id])
        n_games = len(games)
        line_game_sums: dict[str, list[float]] = {line: [] for line in all_lines}
        for _, players in games:
            acc: dict[str, list[float]] = {line: [] for line in all_lines}
            for pid in sorted(players):
                line = position_map.get(pid, UNCLASSIFIED)
                if line not in acc:
                    line = UNCLASSIFIED
                acc[line].append(players[pid])
            for line in all_lines:
                line_game_sums[line].append(sum(acc[line]))
        per_line = {
            line: math.fsum(line_game_sums[line]) / n_games for line in all_lines
        }
        team_average = sum(per_line[line] for line in all_lines)
        out.append(
            LineContribution(
                team_id=team_id,
                n_games=n_games,
                per_line=per_line,
                team_average=team_average,
            )
        )
    return out


LEADERBOARD_COLUMNS = (
    "player_id",
    "team_id",
    "position",
    "birthdate",
    "minutes",
    "n_games",
    "n_actions",
    "total_value",
    "rating_per90",
    "actions_per90",
    "mean_value_per_action",
)


def leaderboard_csv_text(rows: list[PlayerRating]) -> str:
    lines = [",".join(LEADERBOARD_COLUMNS)]
    for r in rows:
        lines.append(
            f"{r.player_id},{r.team_id},{r.position},{r.birthdate},"
            f"{r.minutes!r},{r.n_games},{r.n_actions},{r.total_value!r},"
            f"{r.rating_per90!r},{r.actions_per90!r},{r.mean_value_per_action!r}"
        )
    return "\n".join(lines) + "\n"


def team_ratings_csv_text(rows: list[TeamGameRating]) -> str:
    lines = ["game_id,team_id,rating"]
    for r in rows:
        lines.append(f"{r.game_id},{r.team_id},{r.rating!r}")
    return "\n".join(lines) + "\n"
