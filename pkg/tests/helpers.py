"""Shared builders and independent oracles for the test suite.

The oracles here deliberately re-derive expected results from first
principles (hardcoded vocabulary, brute-force scans) instead of calling
back into the library, so a bug in the implementation cannot hide in its
own test.
"""

from __future__ import annotations

import numpy as np

from actionvalue.actions import (
    Action,
    ActionResult,
    ActionType,
    BodyPart,
    GameMeta,
    build_game,
)

# ---------------------------------------------------------------------------
# toy game construction


def mk_action(
    action_id: int,
    *,
    period: int = 1,
    t: float | None = None,
    start: tuple[float, float] = (50.0, 34.0),
    end: tuple[float, float] = (55.0, 34.0),
    player: str = "h1",
    team: str = "H",
    kind: ActionType = ActionType.PASS,
    body: BodyPart = BodyPart.FOOT,
    result: ActionResult = ActionResult.SUCCESS,
) -> Action:
    t = float(5 * action_id) if t is None else float(t)
    return Action(
        action_id=action_id,
        period=period,
        start_time=t,
        end_time=t + 2.0,
        start_x=start[0],
        start_y=start[1],
        end_x=end[0],
        end_y=end[1],
        player_id=player,
        team_id=team,
        action_type=kind,
        body_part=body,
        result=result,
    )


def mk_game(actions, home="H", away="V", game_id="toy", **meta_kwargs):
    meta = GameMeta(
        game_id=game_id, home_team_id=home, away_team_id=away, **meta_kwargs
    )
    return build_game(actions, meta)


def pass_chain(n: int, *, team="H", player="h1", start_id=0, period=1, t0=0.0):
    """n successful passes by one team, advancing slightly."""
    acts = []
    for i in range(n):
        x = 30.0 + (i % 40)
        acts.append(
            mk_action(
                start_id + i,
                period=period,
                t=t0 + 5 * i,
                start=(x, 30.0),
                end=(x + 2.0, 31.0),
                player=player,
                team=team,
            )
        )
    return acts


# ---------------------------------------------------------------------------
# label oracle: brute-force scan with hardcoded vocabulary

_SHOT_NAMES = frozenset({"shot", "shot_penalty", "shot_free_kick"})
_FLIP_NAMES = frozenset({"fail", "offside", "yellow_card", "red_card"})


def _other(game, team):
    return game.away_team_id if team == game.home_team_id else game.home_team_id


def oracle_labels(game, k: int = 10) -> list[tuple[bool, bool]]:
    """(scores, concedes) per on-ball action, by direct definition."""
    seq = [a for a in game.actions if a.action_type.value != "run_without_ball"]
    out: list[tuple[bool, bool]] = []
    for i, a in enumerate(seq):
        holder = a.team_id
        if a.result.value in _FLIP_NAMES:
            holder = _other(game, holder)
        scores = concedes = False
        for j in range(i + 1, min(i + k, len(seq) - 1) + 1):
            b = seq[j]
            if b.period != a.period:
                continue
            scorer = None
            if b.action_type.value in _SHOT_NAMES and b.result.value == "success":
                scorer = b.team_id
            elif b.result.value == "own_goal":
                scorer = _other(game, b.team_id)
            if scorer is None:
                continue
            if scorer == holder:
                scores = True
            else:
                concedes = True
        out.append((scores, concedes))
    return out


# ---------------------------------------------------------------------------
# metric oracles


def auc_pairwise(probs, y) -> float | None:
    """O(n^2) pairwise AUC with half credit for ties; None if one class."""
    p = np.asarray(probs, dtype=np.float64)
    yb = np.asarray(y, dtype=bool)
    pos = p[yb]
    neg = p[~yb]
    if len(pos) == 0 or len(neg) == 0:
        return None
    diff = pos[:, None] - neg[None, :]
    wins = float((diff > 0.0).sum()) + 0.5 * float((diff == 0.0).sum())
    return wins / (len(pos) * len(neg))


def bins_by_hand(probs, y, n_bins: int) -> list[tuple[float, float, int]]:
    """Equal-width calibration bins via plain Python accumulation."""
    cells: dict[int, list[tuple[float, bool]]] = {}
    for p, label in zip(probs, y):
        b = min(int(p * n_bins), n_bins - 1)
        cells.setdefault(b, []).append((float(p), bool(label)))
    out = []
    for b in sorted(cells):
        members = cells[b]
        mean_p = sum(p for p, _ in members) / len(members)
        frac = sum(1 for _, pos in members if pos) / len(members)
        out.append((mean_p, frac, len(members)))
    return out


# ---------------------------------------------------------------------------
# game transforms


def relabel_home_away(game):
    """Swap which team is called home; the physical game is untouched."""
    meta = GameMeta(
        game_id=game.game_id,
        home_team_id=game.away_team_id,
        away_team_id=game.home_team_id,
        player_minutes=dict(game.player_minutes),
        player_positions=dict(game.player_positions),
        player_birthdates=dict(game.player_birthdates),
        attack_right=dict(game.attack_right),
    )
    return build_game(game.actions, meta)


def mirror_game(game):
    """Reflect every coordinate and transpose both teams' directions."""
    from dataclasses import replace

    mirrored = [
        replace(
            a,
            start_x=105.0 - a.start_x,
            start_y=68.0 - a.start_y,
            end_x=105.0 - a.end_x,
            end_y=68.0 - a.end_y,
        )
        for a in game.actions
    ]
    meta = GameMeta(
        game_id=game.game_id,
        home_team_id=game.home_team_id,
        away_team_id=game.away_team_id,
        player_minutes=dict(game.player_minutes),
        player_positions=dict(game.player_positions),
        player_birthdates=dict(game.player_birthdates),
        attack_right={key: not v for key, v in game.attack_right.items()},
    )
    return build_game(mirrored, meta)
