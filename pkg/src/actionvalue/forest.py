"""Random forest of Gini-split decision trees, implemented on numpy arrays.

Determinism contract (relied on by tests and the save format):

* tree t draws its RNG from ``SeedSequence(entropy=seed, spawn_key=(t,))``,
  so trees are reproducible independently of training parallelism;
* the bootstrap is ``rng.integers(0, n, n)`` (sampling row positions with
  replacement);
* candidate features are sampled without replacement then sorted, so Gini
  ties resolve to the lowest feature index; within a feature, the first
  minimum of the split score wins, i.e. the lowest threshold;
* leaf probabilities are Laplace-smoothed: (positives + 1) / (samples + 2),
  counted with bootstrap multiplicity, so never exactly 0 or 1.

Predictions average leaf values over trees in index order, so they do not
depend on how many workers trained the forest.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import SchemaMismatch
from .validation import ParamsMixin, check_is_fitted, check_matrix, check_matrix_labels

_LEAF = -1  # feature index marking a leaf node


@dataclass
class Tree:
    """One fitted tree in flat-array form."""

    feature: np.ndarray  # int32, _LEAF for leaves
    threshold: np.ndarray  # float64
    left: np.ndarray  # int32
    right: np.ndarray  # int32
    value: np.ndarray  # float64 smoothed positive fraction
    count: np.ndarray  # int32 bootstrap samples at the node

    def predict(self, X: np.ndarray) -> np.ndarray:
        nodes = np.zeros(len(X), dtype=np.int32)
        while True:
            feats = self.feature[nodes]
            active = np.nonzero(feats != _LEAF)[0]
            if len(active) == 0:
                break
            cur = nodes[active]
            go_left = X[active, feats[active]] <= self.threshold[cur]
            nodes[active] = np.where(go_left, self.left[cur], self.right[cur])
        return self.value[nodes]


class _TreeBuilder:
    def __init__(self, X: np.ndarray, y: np.ndarray, params: "RandomForestGoalModel"):
        self.X = X
        self.y = y.astype(np.float64)
        self.max_depth = params.max_depth
        self.min_leaf = max(1, params.min_leaf)
        self.m_features = params._features_per_split(X.shape[1])
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []
        self.count: list[int] = []

    def new_node(self) -> int:
        self.feature.append(_LEAF)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        self.count.append(0)
        return len(self.feature) - 1

    def build(self, rng: np.random.Generator, idx: np.ndarray) -> Tree:
        root = self.new_node()
        stack = [(root, idx, 0)]
        d = self.X.shape[1]
        while stack:
            node, rows, depth = stack.pop()
            n = len(rows)
            pos = float(self.y[rows].sum())
            self.count[node] = n
            self.value[node] = (pos + 1.0) / (n + 2.0)
            if (
                depth >= self.max_depth
                or n < 2 * self.min_leaf
                or pos == 0.0
                or pos == n
            ):
                continue
            feats = rng.choice(d, size=self.m_features, replace=False)
            feats.sort()
            split = self.best_split(rows, feats, n, pos)
            if split is None:
                continue
            f, thr = split
            go_left = self.X[rows, f] <= thr
            left_rows = rows[go_left]
            right_rows = rows[~go_left]
            self.feature[node] = int(f)
            self.threshold[node] = float(thr)
            left_id = self.new_node()
            right_id = self.new_node()
            self.left[node] = left_id
            self.right[node] = right_id
            stack.append((right_id, right_rows, depth + 1))
            stack.append((left_id, left_rows, depth + 1))
        return Tree(
            feature=np.array(self.feature, dtype=np.int32),
            threshold=np.array(self.threshold, dtype=np.float64),
            left=np.array(self.left, dtype=np.int32),
            right=np.array(self.right, dtype=np.int32),
            value=np.array(self.value, dtype=np.float64),
            count=np.array(self.count, dtype=np.int32),
        )

    def best_split(
        self, rows: np.ndarray, feats: np.ndarray, n: int, pos: float
    ) -> tuple[int, float] | None:
        # minimize the summed child impurity  n_l*g_l + n_r*g_r  (up to the
        # constant factor 2/n); parent score in the same units:
        parent = pos * (n - pos) / n
        best_score = parent - 1e-12  # require a strict impurity decrease
        best: tuple[int, float] | None = None
        lo = self.min_leaf
        hi = n - self.min_leaf  # split sizes s in [lo, hi]
        for f in feats:
            xv = self.X[rows, f]
            order = np.argsort(xv, kind="stable")
            xs = xv[order]
            if xs[0] == xs[-1]:
                continue
            boundary = xs[lo : hi + 1] > xs[lo - 1 : hi]
            if not boundary.any():
                continue
            s = np.nonzero(boundary)[0] + lo
            cum = np.cumsum(self.y[rows][order])
            cl = cum[s - 1]
            nl = s.astype(np.float64)
            nr = n - nl
            cr = pos - cl
            score = cl * (nl - cl) / nl + cr * (nr - cr) / nr
            k = int(np.argmin(score))  # first minimum -> lowest threshold
            if score[k] < best_score:
                a = float(xs[s[k] - 1])
                b = float(xs[s[k]])
                thr = a + (b - a) / 2.0
                if thr >= b:  # midpoint rounded onto the right neighbor
                    thr = a
                best_score = float(score[k])
                best = (int(f), thr)
        return best


class RandomForestGoalModel(ParamsMixin):
    """Bootstrap ensemble of Gini trees with Laplace-smoothed leaves."""

    def __init__(
        self,
        n_trees: int = 1000,
        max_depth: int = 12,
        min_leaf: int = 5,
        features_per_split: int | None = None,
        seed: int = 0,
        n_jobs: int = 1,
    ) -> None:
        self.n_trees = n_trees
        self.max_depth = max_depth
        self.min_leaf = min_leaf
        self.features_per_split = features_per_split
        self.seed = seed
        self.n_jobs = n_jobs

    def _features_per_split(self, d: int) -> int:
        if self.features_per_split is not None:
            return max(1, min(self.features_per_split, d))
        return max(1, min(math.ceil(math.sqrt(d)), d))

    def fit(self, X, y, schema_hash: str | None = None) -> "RandomForestGoalModel":
        X, yb = check_matrix_labels(X, y)
        Xf = np.asfortranarray(X)  # column gathers dominate tree building
        n, d = X.shape
        self.n_features_in_ = d
        self.schema_hash_ = schema_hash

        def fit_tree(t: int) -> Tree:
            rng = np.random.default_rng(
                np.random.SeedSequence(entropy=self.seed, spawn_key=(t,))
            )
            idx = rng.integers(0, n, n)
            return _TreeBuilder(Xf, yb, self).build(rng, idx)

        if self.n_jobs and self.n_jobs > 1:
            with ThreadPoolExecutor(max_workers=self.n_jobs) as pool:
                self.trees_ = list(pool.map(fit_tree, range(self.n_trees)))
        else:
            self.trees_ = [fit_tree(t) for t in range(self.n_trees)]
        return self

    def predict_proba(self, X) -> np.ndarray:
        check_is_fitted(self, "trees_")
        X = check_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise SchemaMismatch(
                f"model expects {self.n_features_in_} features, got {X.shape[1]}"
            )
        acc = np.zeros(len(X), dtype=np.float64)
        for tree in self.trees_:  # fixed order: independent of fit parallelism
            acc += tree.predict(X)
        p = acc / len(self.trees_)
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        return self.predict_proba(X)[:, 1] >= 0.5

    @property
    def classes_(self) -> np.ndarray:
        return np.array([False, True])
