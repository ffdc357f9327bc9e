from __future__ import annotations

import numpy as np
import pytest

from actionvalue.dataset import build_dataset, read_dataset_csv, write_dataset_csv
from actionvalue.errors import EmptyInput, InputError
from actionvalue.synthetic import SynthConfig, generate_synthetic_game
from helpers import mk_game, pass_chain


def test_row_count_matches_states(corpus2):
    ds = build_dataset(corpus2, w=3, k=10)
    from actionvalue.actions import on_ball_actions

    expected = sum(len(on_ball_actions(g)) for g in corpus2)
    assert ds.n_rows == expected
    assert ds.X.shape == (expected, 135)
    assert len(ds.index) == expected


def test_rows_ordered_by_game_then_action(corpus2):
    ds = build_dataset(corpus2, w=3, k=10)
    assert ds.index == sorted(ds.index)


def test_empty_corpus_rejected():
    with pytest.raises(EmptyInput):
        build_dataset([], w=3)


def test_duplicate_game_ids_rejected():
    g = mk_game(pass_chain(3))
    with pytest.raises(InputError):
        build_dataset([g, g], w=2)


def test_zero_goal_corpus_has_all_false_labels():
    games = [
        generate_synthetic_game(
            SynthConfig(seed=s, n_actions=300, shot_rate=0.0), game_id=f"z{s}"
        )
        for s in (1, 2)
    ]
    ds = build_dataset(games, w=2, k=10)
    assert not ds.scores.any()
    assert not ds.concedes.any()


def test_csv_round_trip(tmp_path, corpus2):
    ds = build_dataset([corpus2[0]], w=2, k=10)
    path = tmp_path / "features.csv"
    write_dataset_csv(ds, path)
    again = read_dataset_csv(path)
    assert again.schema == ds.schema
    assert again.index == ds.index
    assert (again.scores == ds.scores).all()
    assert (again.concedes == ds.concedes).all()
    assert np.array_equal(again.X, ds.X)  # repr round-trip is bit-exact


def test_csv_header_carries_schema(tmp_path, corpus2):
    ds = build_dataset([corpus2[0]], w=2, k=10)
    path = tmp_path / "features.csv"
    write_dataset_csv(ds, path)
    header = path.read_text(encoding="utf-8").splitlines()[0].split(",")
    assert header[:2] == ["game_id", "action_id"]
    assert header[2 : 2 + len(ds.schema)] == list(ds.schema.names)
    assert header[-2:] == ["scores", "concedes"]
