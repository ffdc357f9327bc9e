"""Command-line entry point: one binary, one subcommand per pipeline stage.

Exit codes: 0 success, 2 input error, 3 contract error, 4 internal error.
Failures print a single machine-readable JSON object to stderr. All output
files are written atomically (temp file + rename), so a failed run never
leaves a partial artifact at a final path.

A TOML file passed with --config supplies defaults for any long flag of the
chosen subcommand (keys use underscores, e.g. ``n_trees = 200``); explicit
flags win over the config file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .charts import calibration_chart, line_chart, scatter_chart
from .dataset import build_dataset, read_dataset_csv, write_dataset_csv
from .errors import ContractError, InputError, MissingInput, SchemaMismatch
from .features import PER_ACTION_COLUMNS, FeatureSchema
from .fileio import atomic_write_text, require_dir, require_file
from .forest import RandomForestGoalModel
from .gameio import (
    load_corpus,
    read_game,
    read_meta_csv,
    write_actions_csv,
    write_meta_csv,
)
from .ingest import EventMapping, parse_events_file
from .logistic import LogisticGoalModel
from .metrics import EvalReport, evaluate
from .model_io import load_model, save_model
from .ratings import (
    compute_player_ratings,
    leaderboard,
    leaderboard_csv_text,
    line_contributions,
    moving_average,
    team_ratings,
    team_ratings_csv_text,
)
from .sweep import sweep_csv_text, window_sweep
from .synthetic import SynthConfig, generate_corpus
from .valuation import compute_action_values, read_values_csv, values_csv_text

_PAIR_COLUMNS = 3
_CONTEXT_COLUMNS = 3


def _window_from_width(n_features: int) -> int:
    """Invert the schema width formula to recover w from a trained model."""
    per_w = PER_ACTION_COLUMNS + _PAIR_COLUMNS
    w = (n_features - _CONTEXT_COLUMNS + _PAIR_COLUMNS) // per_w
    if w < 1 or len(FeatureSchema.build(w)) != n_features:
        raise SchemaMismatch(
            f"model feature count {n_features} does not match any window size"
        )
    return w


# --- subcommands -------------------------------------------------------------


def cmd_convert(args: argparse.Namespace) -> int:
    require_file(args.in_path)
    if args.mapping:
        mapping = EventMapping.from_toml(args.mapping)
    else:
        mapping = EventMapping.default()
    game = parse_events_file(args.in_path, mapping, strict=args.strict)
    write_actions_csv(game, args.out)
    print(f"wrote {len(game.actions)} actions for game {game.game_id} to {args.out}")
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    if args.games < 1:
        raise InputError(f"--games must be >= 1, got {args.games}")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    cfg = SynthConfig(n_actions=args.actions)
    games = generate_corpus(args.seed, args.games, cfg)
    for game in games:
        write_actions_csv(game, out / f"{game.game_id}.spadl.csv")
    write_meta_csv(games, out / "meta.csv")
    print(f"wrote {len(games)} games and meta.csv to {out}")
    return 0


def cmd_dataset(args: argparse.Namespace) -> int:
    games = load_corpus(args.in_path)
    ds = build_dataset(games, w=args.w, k=args.k)
    write_dataset_csv(ds, args.out)
    print(
        f"wrote {ds.n_rows} rows x {len(ds.schema)} features "
        f"(schema {ds.schema.hash}) to {args.out}"
    )
    return 0


def _make_model(args: argparse.Namespace):
    if args.learner == "forest":
        return RandomForestGoalModel(
            n_trees=args.n_trees,
            max_depth=args.max_depth,
            min_leaf=args.min_leaf,
            seed=args.seed,
            n_jobs=args.jobs,
        )
    if args.learner == "logistic":
        return LogisticGoalModel(l2=args.l2, seed=args.seed)
    raise InputError(f"unknown learner {args.learner!r}")


def cmd_train(args: argparse.Namespace) -> int:
    ds = read_dataset_csv(args.features)
    y = ds.scores if args.target == "scores" else ds.concedes
    model = _make_model(args)
    model.fit(ds.X, y, schema_hash=ds.schema.hash)
    save_model(model, args.out, target=args.target)
    print(
        f"trained {args.learner} on {ds.n_rows} rows for target "
        f"{args.target}; saved to {args.out}"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    model, target = load_model(args.model)
    ds = read_dataset_csv(args.features)
    stored = getattr(model, "schema_hash_", None)
    if stored is not None and stored != ds.schema.hash:
        raise SchemaMismatch(
            f"model schema {stored} does not match dataset schema {ds.schema.hash}"
        )
    target = args.target or target or "scores"
    y = ds.scores if target == "scores" else ds.concedes
    probs = model.predict_proba(ds.X)[:, 1]
    report = evaluate(probs, y, n_bins=args.bins)
    atomic_write_text(args.report, json.dumps(report.to_dict(), sort_keys=True) + "\n")
    if args.svg:
        atomic_write_text(
            args.svg, calibration_chart(report.bins, title=f"Calibration: {target}")
        )
    print(
        f"log_loss={report.log_loss:.6f} roc_auc={report.roc_auc:.6f} "
        f"brier={report.brier:.6f} n={report.n}"
    )
    return 0


def cmd_value(args: argparse.Namespace) -> int:
    model_scores, _ = load_model(args.model_scores)
    model_concedes, _ = load_model(args.model_concedes)
    if model_scores.n_features_in_ != model_concedes.n_features_in_:
        raise SchemaMismatch(
            "scores and concedes models disagree on feature count: "
            f"{model_scores.n_features_in_} vs {model_concedes.n_features_in_}"
        )
    w = _window_from_width(model_scores.n_features_in_)
    in_path = Path(args.game)
    if in_path.is_dir():
        games = load_corpus(in_path)
    else:
        require_file(in_path)
        games = [read_game(in_path)]
    all_values = []
    for game in games:
        values, _ = compute_action_values(game, model_scores, model_concedes, w=w)
        all_values.extend(values)
    atomic_write_text(args.out, values_csv_text(all_values))
    print(f"valued {len(all_values)} actions over {len(games)} games to {args.out}")
    return 0


def _read_values_input(path_str: str):
    path = Path(path_str)
    if path.is_dir():
        files = sorted(p for p in path.iterdir() if p.suffix == ".csv")
        if not files:
            raise MissingInput(f"no values csv files in {path}")
        values = []
        for p in files:
            values.extend(read_values_csv(p))
        return values
    require_file(path)
    return read_values_csv(path)


def cmd_rate(args: argparse.Namespace) -> int:
    values = _read_values_input(args.values)
    meta = read_meta_csv(args.meta)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    ratings = compute_player_ratings(values, meta)
    board = leaderboard(
        ratings,
        min_minutes=args.min_minutes,
        position=args.position,
        born_after=args.born_after,
        exclude_teams=frozenset(
            t for t in (args.exclude_teams or "").split(",") if t
        ),
    )
    atomic_write_text(out / "leaderboard.csv", leaderboard_csv_text(board))

    profiles = {
        r.player_id: {
            "position": r.position,
            "team_id": r.team_id,
            "minutes": r.minutes,
            "rating_per90": r.rating_per90,
            "actions_per90": r.actions_per90,
            "mean_value_per_action": r.mean_value_per_action,
            "profile_per90": r.profile_per90,
        }
        for r in ratings
    }
    atomic_write_text(
        out / "profiles.json", json.dumps(profiles, sort_keys=True, indent=1) + "\n"
    )

    teams = team_ratings(values)
    atomic_write_text(out / "team_ratings.csv", team_ratings_csv_text(teams))

    position_map = {}
    for r in ratings:
        position_map[r.player_id] = r.position
    lines = line_contributions(values, position_map)
    rows = ["team_id,n_games,GK,DEF,MID,FWD,unclassified,team_average"]
    for lc in lines:
        cells = ",".join(repr(lc.per_line[k]) for k in ("GK", "DEF", "MID", "FWD"))
        rows.append(
            f"{lc.team_id},{lc.n_games},{cells},"
            f"{lc.per_line['unclassified']!r},{lc.team_average!r}"
        )
    atomic_write_text(out / "line_contributions.csv", "\n".join(rows) + "\n")

    series: dict[str, list[tuple[float, float]]] = {}
    by_team: dict[str, list[float]] = {}
    for row in teams:
        by_team.setdefault(row.team_id, []).append(row.rating)
    for team_id in sorted(by_team):
        smoothed = moving_average(by_team[team_id], window=args.ma_window)
        series[team_id] = [(float(i + 1), v) for i, v in enumerate(smoothed)]
    atomic_write_text(
        out / "team_series.svg",
        line_chart(
            series,
            title=f"Team rating, {args.ma_window}-game moving average",
            x_label="game index",
            y_label="rating",
        ),
    )

    points = [
        (r.actions_per90, r.mean_value_per_action, r.player_id) for r in board
    ]
    atomic_write_text(
        out / "value_vs_volume.svg",
        scatter_chart(
            points,
            title="Value per action vs actions per 90",
            x_label="actions per 90",
            y_label="mean value per action",
            labeled=args.label_top,
        ),
    )
    print(
        f"rated {len(ratings)} players, {len(board)} on the leaderboard; "
        f"reports in {out}"
    )
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    sections: list[str] = ["# Action value report", ""]

    if args.report:
        with open(require_file(args.report), encoding="utf-8") as fh:
            eval_report = EvalReport.from_dict(json.load(fh))
        atomic_write_text(
            out / "calibration.svg", calibration_chart(eval_report.bins)
        )
        sections += [
            "## Model evaluation",
            "",
            f"- log loss: {eval_report.log_loss:.6f}",
            f"- ROC AUC: {eval_report.roc_auc:.6f}"
            + (" (degenerate: single-class test set)" if eval_report.auc_degenerate else ""),
            f"- Brier score: {eval_report.brier:.6f}",
            f"- rows: {eval_report.n}",
            "",
            "![calibration](calibration.svg)",
            "",
        ]

    ratings_dir = Path(args.ratings) if args.ratings else None
    if ratings_dir is not None:
        require_dir(ratings_dir)
        board_path = ratings_dir / "leaderboard.csv"
        if board_path.is_file():
            rows = board_path.read_text(encoding="utf-8").splitlines()
            header = rows[0].split(",")
            sections += ["## Leaderboard (top %d)" % args.top, ""]
            sections.append("| " + " | ".join(header) + " |")
            sections.append("|" + "---|" * len(header))
            for line in rows[1 : args.top + 1]:
                sections.append("| " + " | ".join(line.split(",")) + " |")
            sections.append("")
        for name in ("team_series.svg", "value_vs_volume.svg"):
            src = ratings_dir / name
            if src.is_file():
                atomic_write_text(out / name, src.read_text(encoding="utf-8"))
                sections += [f"![{name}]({name})", ""]
        profiles_path = ratings_dir / "profiles.json"
        if profiles_path.is_file():
            atomic_write_text(
                out / "profiles.json", profiles_path.read_text(encoding="utf-8")
            )
            sections += ["Per-player action-type profiles: `profiles.json`", ""]

    atomic_write_text(out / "report.md", "\n".join(sections).rstrip() + "\n")
    print(f"composed report in {out}")
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    games = load_corpus(args.in_path)
    try:
        w_values = [int(tok) for tok in args.w_values.split(",") if tok]
    except ValueError as exc:
        raise InputError(f"--w-values must be a comma list of integers: {exc}") from None
    params: dict = {"seed": args.seed}
    if args.learner == "forest":
        params.update(
            n_trees=args.n_trees,
            max_depth=args.max_depth,
            min_leaf=args.min_leaf,
            n_jobs=args.jobs,
        )
    rows = window_sweep(
        games,
        w_values,
        k=args.k,
        learner=args.learner,
        learner_params=params,
        train_frac=args.train_frac,
        target=args.target,
    )
    text = sweep_csv_text(rows)
    if args.out:
        atomic_write_text(args.out, text)
    print(text, end="")
    return 0


# --- parser ------------------------------------------------------------------


def _add_common_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--learner", choices=("forest", "logistic"), default="forest",
                   help="model family (default: forest)")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default: 0)")
    p.add_argument("--n-trees", type=int, default=100,
                   help="forest size; desk-scale default 100")
    p.add_argument("--max-depth", type=int, default=7,
                   help="forest tree depth limit (default: 7)")
    p.add_argument("--min-leaf", type=int, default=25,
                   help="minimum samples per forest leaf (default: 25)")
    p.add_argument("--l2", type=float, default=1e-4,
                   help="logistic ridge strength (default: 1e-4)")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads for tree fitting (default: 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="actionvalue",
        description="Value soccer actions from event streams: convert, "
        "simulate, featurize, train, evaluate, value, rate, report.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--config",
        help="TOML file with default values for the subcommand's flags",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="map provider events to action tuples")
    p.add_argument("--in", dest="in_path", required=True,
                   help="provider event stream (.jsonl)")
    p.add_argument("--mapping", help="mapping TOML (default: built-in mapping)")
    p.add_argument("--out", required=True, help="output actions csv")
    p.add_argument("--strict", action="store_true",
                   help="fail on unmapped event types instead of skipping")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("synth", help="generate a seeded synthetic corpus")
    p.add_argument("--seed", type=int, default=0, help="corpus seed (default: 0)")
    p.add_argument("--games", type=int, default=10,
                   help="number of games (default: 10)")
    p.add_argument("--actions", type=int, default=1600,
                   help="on-ball actions per game (default: 1600)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("dataset", help="build feature matrix and labels")
    p.add_argument("--in", dest="in_path", required=True,
                   help="directory of per-game action tables")
    p.add_argument("--w", type=int, default=3,
                   help="actions per state window (default: 3)")
    p.add_argument("--k", type=int, default=10,
                   help="label horizon in actions (default: 10)")
    p.add_argument("--out", required=True, help="output features csv")
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("train", help="fit a goal-probability model")
    p.add_argument("--features", required=True, help="features csv from `dataset`")
    p.add_argument("--target", choices=("scores", "concedes"), default="scores",
                   help="label column to fit (default: scores)")
    _add_common_model_flags(p)
    p.add_argument("--out", required=True, help="output model file")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="score a model on a feature table")
    p.add_argument("--model", required=True, help="model file from `train`")
    p.add_argument("--features", required=True, help="features csv to score")
    p.add_argument("--target", choices=("scores", "concedes"),
                   help="label column (default: the model's training target)")
    p.add_argument("--bins", type=int, default=10,
                   help="calibration bins (default: 10)")
    p.add_argument("--report", required=True, help="output report json")
    p.add_argument("--svg", help="optional calibration chart")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("value", help="compute per-action values")
    p.add_argument("--game", required=True,
                   help="one actions csv or a corpus directory")
    p.add_argument("--model-scores", required=True,
                   help="model for P(possessing team scores)")
    p.add_argument("--model-concedes", required=True,
                   help="model for P(possessing team concedes)")
    p.add_argument("--out", required=True, help="output values csv")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("rate", help="aggregate values into ratings")
    p.add_argument("--values", required=True,
                   help="values csv or directory of them")
    p.add_argument("--meta", required=True, help="player-game metadata csv")
    p.add_argument("--min-minutes", type=float, default=0.0,
                   help="leaderboard minutes floor (default: 0)")
    p.add_argument("--position", help="leaderboard position filter")
    p.add_argument("--born-after",
                   help="keep players born strictly after this ISO date")
    p.add_argument("--exclude-teams",
                   help="comma list of team ids to drop from the leaderboard")
    p.add_argument("--ma-window", type=int, default=15,
                   help="team series moving-average window (default: 15)")
    p.add_argument("--label-top", type=int, default=10,
                   help="label this many top players on the scatter (default: 10)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("report", help="compose a report from prior artifacts")
    p.add_argument("--report", help="evaluation json from `eval`")
    p.add_argument("--ratings", help="ratings directory from `rate`")
    p.add_argument("--top", type=int, default=10,
                   help="leaderboard rows in the report (default: 10)")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sweep", help="train one model per window size")
    p.add_argument("--in", dest="in_path", required=True,
                   help="directory of per-game action tables")
    p.add_argument("--w-values", default="1,2,3,4,5",
                   help="comma list of window sizes (default: 1,2,3,4,5)")
    p.add_argument("--k", type=int, default=10,
                   help="label horizon in actions (default: 10)")
    p.add_argument("--target", choices=("scores", "concedes"), default="scores",
                   help="label column to fit (default: scores)")
    p.add_argument("--train-frac", type=float, default=0.7,
                   help="fraction of games in the training split (default: 0.7)")
    _add_common_model_flags(p)
    p.add_argument("--out", help="optional output csv (table always printed)")
    p.set_defaults(func=cmd_sweep)

    # accept --config on either side of the subcommand token
    for sp in _iter_subparsers(parser):
        sp.add_argument("--config", help=argparse.SUPPRESS)

    return parser


def _iter_subparsers(parser: argparse.ArgumentParser):
    for action in parser._actions:  # noqa: SLF001 - argparse has no public walk
        if isinstance(action, argparse._SubParsersAction):  # noqa: SLF001
            yield from action.choices.values()


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> None:
    """Load --config TOML and install its values as subcommand defaults."""
    path = None
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif tok.startswith("--config="):
            path = tok.split("=", 1)[1]
    if path is None:
        return
    try:
        import tomllib  # Python >= 3.11
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        with open(require_file(path), "rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: invalid TOML: {exc}") from exc
    flat = {k: v for k, v in data.items() if not isinstance(v, dict)}
    for sub in _iter_subparsers(parser):
        dests = {a.dest for a in sub._actions}  # noqa: SLF001
        matching = {k: v for k, v in flat.items() if k in dests}
        if matching:
            sub.set_defaults(**matching)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    command = "cli"
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        command = args.command
        return args.func(args)
    except InputError as exc:
        _emit_error(exc, 2, command)
        return 2
    except ContractError as exc:
        _emit_error(exc, 3, command)
        return 3
    except BrokenPipeError:
        return 0
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports, not raises
        _emit_error(exc, 4, command)
        return 4


def _emit_error(exc: Exception, code: int, command: str) -> None:
    category = {2: "input", 3: "contract", 4: "internal"}[code]
    doc = {
        "error": type(exc).__name__,
        "category": category,
        "command": command,
        "message": str(exc),
    }
    print(json.dumps(doc, sort_keys=True), file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
