"""From-scratch regression machinery for the share-count models.

CART regression trees grown by greedy variance reduction, gradient-boosted
ensembles with shrinkage, a ridge-regression baseline solved by normal
equations, plus the train/test split and MSE helpers the trainer needs.

Split search is exhaustive over midpoints between consecutive distinct
feature values; datasets here are desk-scale, so correctness wins over
clever binning.  Trained models are immutable and safe to share.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Sequence, TypeVar

import numpy as np

T = TypeVar("T")


@dataclass(frozen=True)
class TreeNode:
    """One node of a regression tree: either a split or a leaf.

    A split node carries (feature, threshold, left, right) and routes
    x[feature] <= threshold to the left child.  A leaf carries only value.
    """

    value: float | None = None
    feature: int | None = None
    threshold: float | None = None
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None

    @property
    def is_leaf(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        if self.is_leaf:
            return {"value": self.value}
        return {
            "feature": self.feature,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "TreeNode":
        if "value" in doc:
            return cls(value=float(doc["value"]))
        return cls(
            feature=int(doc["feature"]),
            threshold=float(doc["threshold"]),
            left=cls.from_dict(doc["left"]),
            right=cls.from_dict(doc["right"]),
        )


@dataclass(frozen=True)
class RegressionTree:
    root: TreeNode

    def predict_one(self, x: Sequence[float]) -> float:
        node = self.root
        while not node.is_leaf:
            node = node.left if x[node.feature] <= node.threshold else node.right
        return node.value

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Vectorized prediction for a (n, d) matrix."""
        out = np.empty(X.shape[0], dtype=float)
        self._fill(self.root, X, np.arange(X.shape[0]), out)
        return out

    def _fill(self, node: TreeNode, X: np.ndarray, idx: np.ndarray, out: np.ndarray) -> None:
        if node.is_leaf:
            out[idx] = node.value
            return
        mask = X[idx, node.feature] <= node.threshold
        self._fill(node.left, X, idx[mask], out)
        self._fill(node.right, X, idx[~mask], out)


@dataclass(frozen=True)
class GbtHyperparams:
    n_trees: int = 100
    max_depth: int = 3
    shrinkage: float = 0.1
    min_samples_leaf: int = 5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_trees < 0:
            raise ValueError("n_trees must be >= 0")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")
        if not 0.0 < self.shrinkage <= 1.0:
            raise ValueError("shrinkage must be in (0, 1]")
        if self.min_samples_leaf < 1:
            raise ValueError("min_samples_leaf must be >= 1")


@dataclass(frozen=True)
class GbtModel:
    """Boosted ensemble: base_prediction + shrinkage * sum of tree outputs."""

    base_prediction: float
    shrinkage: float
    trees: tuple[RegressionTree, ...]
    n_features: int
    platform: str = ""

    def predict(self, x: Sequence[float]) -> float:
        if len(x) != self.n_features:
            raise ValueError(f"expected {self.n_features} features, got {len(x)}")
        return self.base_prediction + self.shrinkage * sum(
            tree.predict_one(x) for tree in self.trees
        )

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.shape[1] != self.n_features:
            raise ValueError(f"expected {self.n_features} features, got {X.shape[1]}")
        total = np.full(X.shape[0], self.base_prediction, dtype=float)
        for tree in self.trees:
            total += self.shrinkage * tree.predict(X)
        return total

    def with_platform(self, platform: str) -> "GbtModel":
        return replace(self, platform=platform)

    def to_dict(self) -> dict:
        return {
            "platform": self.platform,
            "base_prediction": self.base_prediction,
            "shrinkage": self.shrinkage,
            "n_features": self.n_features,
            "trees": [tree.root.to_dict() for tree in self.trees],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "GbtModel":
        return cls(
            base_prediction=float(doc["base_prediction"]),
            shrinkage=float(doc["shrinkage"]),
            trees=tuple(RegressionTree(TreeNode.from_dict(t)) for t in doc["trees"]),
            n_features=int(doc["n_features"]),
            platform=str(doc.get("platform", "")),
        )


@dataclass(frozen=True)
class LinearModel:
    """Ridge-regression fit: prediction = weights . x + intercept."""

    weights: tuple[float, ...]
    intercept: float
    l2: float

    def predict(self, x: Sequence[float]) -> float:
        if len(x) != len(self.weights):
            raise ValueError(f"expected {len(self.weights)} features, got {len(x)}")
        return float(np.dot(self.weights, x) + self.intercept)

    def predict_batch(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.shape[1] != len(self.weights):
            raise ValueError(f"expected {len(self.weights)} features, got {X.shape[1]}")
        return X @ np.asarray(self.weights) + self.intercept


def predict(model: GbtModel | LinearModel, x: Sequence[float]) -> float:
    """Score one feature vector with either model type."""
    return model.predict(x)


def _best_split(
    X: np.ndarray, r: np.ndarray, min_samples_leaf: int
) -> tuple[int, float] | None:
    """Exhaustive search for the (feature, threshold) minimizing child SSE.

    Candidates are midpoints between consecutive distinct sorted values,
    considered in (feature, ascending threshold) order with strict
    improvement, so ties resolve to the first candidate deterministically.
    Returns None when no split beats the parent or satisfies the leaf-size
    floor.
    """
    n = len(r)
    best: tuple[int, float] | None = None
    best_sse = float(np.sum((r - r.mean()) ** 2))
    sizes_left = np.arange(1, n)
    sizes_right = n - sizes_left
    valid_sizes = (sizes_left >= min_samples_leaf) & (sizes_right >= min_samples_leaf)
    for f in range(X.shape[1]):
        order = np.argsort(X[:, f], kind="stable")
        xs = X[order, f]
        rs = r[order]
        valid = valid_sizes & (xs[1:] != xs[:-1])
        if not valid.any():
            continue
        cum_all = np.cumsum(rs)
        cum_sq_all = np.cumsum(rs**2)
        cum, total = cum_all[:-1], cum_all[-1]
        cum_sq, total_sq = cum_sq_all[:-1], cum_sq_all[-1]
        sse_left = cum_sq - cum**2 / sizes_left
        sse_right = (total_sq - cum_sq) - (total - cum) ** 2 / sizes_right
        sse = np.where(valid, sse_left + sse_right, np.inf)
        j = int(np.argmin(sse))
        if sse[j] < best_sse:
            best_sse = float(sse[j])
            best = (f, float((xs[j] + xs[j + 1]) / 2.0))
    return best


def _grow(X: np.ndarray, r: np.ndarray, depth: int, hp: GbtHyperparams) -> TreeNode:
    mean = float(r.mean())
    if (
        depth >= hp.max_depth
        or len(r) < 2 * hp.min_samples_leaf
        or np.all(r == r[0])
    ):
        return TreeNode(value=mean)
    split = _best_split(X, r, hp.min_samples_leaf)
    if split is None:
        return TreeNode(value=mean)
    f, threshold = split
    mask = X[:, f] <= threshold
    return TreeNode(
        feature=f,
        threshold=threshold,
        left=_grow(X[mask], r[mask], depth + 1, hp),
        right=_grow(X[~mask], r[~mask], depth + 1, hp),
    )


def fit_tree(X: np.ndarray, r: np.ndarray, hp: GbtHyperparams) -> RegressionTree:
    """Fit one CART regression tree to residuals by variance reduction."""
    X = np.asarray(X, dtype=float)
    r = np.asarray(r, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if len(X) == 0 or len(X) != len(r):
        raise ValueError("X and r must be non-empty and the same length")
    return RegressionTree(_grow(X, r, 0, hp))


def train_gbt(
    X: np.ndarray, y: np.ndarray, hp: GbtHyperparams | None = None, platform: str = ""
) -> GbtModel:
    """Boost regression trees against squared loss.

    F0 is the target mean; each stage fits a tree to the current residuals
    and is added with the shrinkage factor.  Training has no random element,
    so results are reproducible by construction.
    """
    hp = hp or GbtHyperparams()
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if len(X) == 0 or len(X) != len(y):
        raise ValueError("X and y must be non-empty and the same length")
    if not np.all(np.isfinite(y)) or not np.all(np.isfinite(X)):
        raise ValueError("training data must be finite")

    base = float(y.mean())
    current = np.full(len(y), base)
    trees: list[RegressionTree] = []
    for _ in range(hp.n_trees):
        tree = fit_tree(X, y - current, hp)
        current = current + hp.shrinkage * tree.predict(X)
        trees.append(tree)
    return GbtModel(
        base_prediction=base,
        shrinkage=hp.shrinkage,
        trees=tuple(trees),
        n_features=X.shape[1],
        platform=platform,
    )


def train_ridge(X: np.ndarray, y: np.ndarray, l2: float) -> LinearModel:
    """Least squares with an L2 penalty on weights (intercept unpenalized).

    Solved by the normal equations with a Cholesky factorization.  A singular
    system (possible only at l2 = 0) raises ValueError advising l2 > 0.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if len(X) == 0 or len(X) != len(y):
        raise ValueError("X and y must be non-empty and the same length")
    if l2 < 0:
        raise ValueError("l2 must be >= 0")

    A = np.hstack([np.ones((len(X), 1)), X])
    if l2 == 0 and np.linalg.matrix_rank(A) < A.shape[1]:
        raise ValueError("design matrix is singular at l2=0; use l2 > 0")
    penalty = np.eye(A.shape[1]) * l2
    penalty[0, 0] = 0.0
    M = A.T @ A + penalty
    try:
        L = np.linalg.cholesky(M)
    except np.linalg.LinAlgError:
        raise ValueError("normal equations are singular; use l2 > 0") from None
    theta = np.linalg.solve(L.T, np.linalg.solve(L, A.T @ y))
    return LinearModel(weights=tuple(float(w) for w in theta[1:]), intercept=float(theta[0]), l2=l2)


def split_train_test(
    records: Sequence[T], fraction: float, seed: int
) -> tuple[list[T], list[T]]:
    """Seeded shuffle, then partition with |train| = round(fraction * n)."""
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must be strictly between 0 and 1")
    n = len(records)
    if n < 2:
        raise ValueError("need at least 2 records to split")
    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    n_train = round(fraction * n)
    train_idx, test_idx = indices[:n_train], indices[n_train:]
    return [records[i] for i in train_idx], [records[i] for i in test_idx]


def mse(predictions: Sequence[float], targets: Sequence[float]) -> float:
    if len(predictions) != len(targets):
        raise ValueError("predictions and targets must have the same length")
    if len(predictions) == 0:
        raise ValueError("cannot compute MSE of empty sequences")
    diff = np.asarray(predictions, dtype=float) - np.asarray(targets, dtype=float)
    return float(np.mean(diff**2))
