"""Opponent utility predictors behind one fit/predict contract.

Every predictor answers the same question: given a user's evidence (their
utilities for a few asked arguments, plus demographics when available), what
is their full per-leaf utility vector? Asked positions are always echoed
verbatim; only the remaining positions are model output.

Two learned methods and three baselines:

* ``svr-eai`` -- one epsilon-insensitive RBF support-vector regression per
  remaining column, trained on the first e utility columns (evidence as a
  fixed amount of information).
* ``cramer`` -- cluster the population, train a depth-bounded random forest
  on the cluster labels, ask the top-e most important utility columns, and
  fill the rest with the predicted cluster's centroid (evidence as depth of
  searching).
* ``randr`` / ``meanr`` / ``clumer`` -- uniform random integers within the
  training bounds; per-column training means; clustering in evidence space
  with per-cluster mean fill.

Fitted predictors serialize to a versioned JSON document. Loaded predictors
evaluate with self-contained kernel/forest evaluators, so serving needs only
this module and numpy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
from scipy.spatial.distance import cdist
from sklearn.ensemble import RandomForestClassifier
from sklearn.svm import SVR

from .clustering import KMeansResult, choose_k
from .dataset import UtilityDataset

FORMAT_VERSION = 1

KIND_SVR = "svr-eai"
KIND_CRAMER = "cramer"
KIND_RANDR = "randr"
KIND_MEANR = "meanr"
KIND_CLUMER = "clumer"
KIND_ORACLE = "oracle"

BASELINE_KINDS = (KIND_RANDR, KIND_MEANR, KIND_CLUMER)
ALL_KINDS = (KIND_SVR, KIND_CRAMER) + BASELINE_KINDS

DEFAULT_K_GRID = (4, 6, 8, 10)


class PredictorError(ValueError):
    """Raised for invalid evidence counts, answers, or unfitted predictors."""


@dataclass(frozen=True)
class EvidenceSpec:
    """What a predictor asks: mode, utility-question count, and asked columns."""

    mode: str  # "prefix" or "selected"
    count: int
    columns: tuple[str, ...]  # demographic columns first, then leaf columns


@dataclass(frozen=True)
class Question:
    column: str
    prompt: str
    is_demographic: bool = False




def _check_evidence(e: int, n_leaves: int, n_demo: int) -> None:
    if e < 0 or e > n_leaves - 1:
        raise PredictorError(f"evidence count {e} outside [0, {n_leaves - 1}]")
    if e == 0 and n_demo == 0:
        raise PredictorError("evidence count 0 requires demographic columns")


class UtilityPredictor:
    """Base fit/predict contract shared by all predictor kinds."""

    kind: str = "abstract"

    def __init__(self) -> None:
        self.evidence: EvidenceSpec | None = None
        self.demo_columns: tuple[str, ...] = ()
        self.leaf_columns: tuple[str, ...] = ()

    # -- fitting -----------------------------------------------------------

    def fit(self, train: UtilityDataset) -> "UtilityPredictor":
        raise NotImplementedError

    def _start_fit(self, train: UtilityDataset, e: int) -> np.ndarray:
        if train.n_rows == 0:
            raise PredictorError("training set is empty")
        _check_evidence(e, train.n_leaves, train.n_demo)
        self.demo_columns = train.demo_columns
        self.leaf_columns = train.leaf_columns
        return train.demo_matrix

    def _prefix_evidence(self, e: int) -> EvidenceSpec:
        return EvidenceSpec(mode="prefix", count=e,
                            columns=self.demo_columns + self.leaf_columns[:e])

    # -- prediction --------------------------------------------------------

    def predict(self, answers: Mapping[str, float],
                draw_seed: int | None = None) -> np.ndarray:
        """Full utility vector: asked positions verbatim, the rest model fill."""
        spec = self._require_fit()
        asked = set(spec.columns)
        given = set(answers)
        if given != asked:
            missing, extra = sorted(asked - given), sorted(given - asked)
            raise PredictorError(f"answer mismatch: missing={missing} extra={extra}")
        demo = np.array([answers[c] for c in self.demo_columns], dtype=float)
        asked_leaf = [c for c in spec.columns if c not in self.demo_columns]
        leaf_answers = np.array([answers[c] for c in asked_leaf], dtype=float)
        out = self._fill(demo, leaf_answers, draw_seed)
        pos = {c: i for i, c in enumerate(self.leaf_columns)}
        for c, v in zip(asked_leaf, leaf_answers):
            out[pos[c]] = v
        return out

    def predict_matrix(self, test: UtilityDataset,
                       draw_seeds: Sequence[int] | None = None) -> np.ndarray:
        """Vectorized predict over every row of ``test`` (same column layout)."""
        spec = self._require_fit()
        if test.demo_columns != self.demo_columns or test.leaf_columns != self.leaf_columns:
            raise PredictorError("test dataset columns differ from training columns")
        asked_ix = self._asked_leaf_indices()
        leaf_answers = test.leaf_matrix[:, asked_ix]
        out = self._fill_matrix(test.demo_matrix, leaf_answers, draw_seeds)
        out[:, asked_ix] = leaf_answers
        return out

    def _asked_leaf_indices(self) -> np.ndarray:
        spec = self._require_fit()
        pos = {c: i for i, c in enumerate(self.leaf_columns)}
        return np.array([pos[c] for c in spec.columns if c not in self.demo_columns],
                        dtype=np.intp)

    def _fill(self, demo: np.ndarray, leaf_answers: np.ndarray,
              draw_seed: int | None) -> np.ndarray:
        out = self._fill_matrix(demo[None, :], leaf_answers[None, :],
                                None if draw_seed is None else [draw_seed])
        return out[0]

    def _fill_matrix(self, demo: np.ndarray, leaf_answers: np.ndarray,
                     draw_seeds: Sequence[int] | None) -> np.ndarray:
        raise NotImplementedError

    def _require_fit(self) -> EvidenceSpec:
        if self.evidence is None:
            raise PredictorError(f"{self.kind} predictor is not fitted")
        return self.evidence

    # -- question plan -----------------------------------------------------

    def ask_plan(self, prompts: Mapping[str, str] | None = None) -> list[Question]:
        """Ordered questions: demographics first, then asked utility columns."""
        spec = self._require_fit()
        plan = []
        for column in spec.columns:
            demo = column in self.demo_columns
            if prompts and column in prompts:
                prompt = prompts[column]
            elif demo:
                prompt = f"Please provide: {column}"
            else:
                prompt = f"How valuable is this argument to you: {column}?"
            plan.append(Question(column=column, prompt=prompt, is_demographic=demo))
        return plan

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        spec = self._require_fit()
        return {
            "format_version": FORMAT_VERSION,
            "kind": self.kind,
            "evidence": {"mode": spec.mode, "count": spec.count,
                         "columns": list(spec.columns)},
            "demo_columns": list(self.demo_columns),
            "leaf_columns": list(self.leaf_columns),
            "state": self._state_dict(),
        }

    def _state_dict(self) -> dict:
        raise NotImplementedError

    def _load_state(self, state: Mapping) -> None:
        raise NotImplementedError

    @classmethod
    def _from_dict(cls, data: Mapping) -> "UtilityPredictor":
        self = cls.__new__(cls)
        UtilityPredictor.__init__(self)
        self.demo_columns = tuple(data["demo_columns"])
        self.leaf_columns = tuple(data["leaf_columns"])
        ev = data["evidence"]
        self.evidence = EvidenceSpec(mode=ev["mode"], count=int(ev["count"]),
                                     columns=tuple(ev["columns"]))
        self._load_state(data["state"])
        return self


# ---------------------------------------------------------------------------
# Self-contained evaluators for serialized models.
# ---------------------------------------------------------------------------

class _RbfSvrPack:
    """RBF support-vector regression evaluated from its dual representation."""

    def __init__(self, support_vectors: np.ndarray, dual_coef: np.ndarray,
                 intercept: float, gamma: float) -> None:
        self.support_vectors = np.asarray(support_vectors, dtype=float)
        self.dual_coef = np.asarray(dual_coef, dtype=float)
        self.intercept = float(intercept)
        self.gamma = float(gamma)

    @classmethod
    def from_sklearn(cls, svr: SVR, gamma: float) -> "_RbfSvrPack":
        return cls(svr.support_vectors_, svr.dual_coef_[0],
                   float(svr.intercept_[0]), gamma)

    def predict(self, x: np.ndarray) -> np.ndarray:
        kernel = np.exp(-self.gamma * cdist(np.atleast_2d(x), self.support_vectors,
                                            metric="sqeuclidean"))
        return kernel @ self.dual_coef + self.intercept

    def to_dict(self) -> dict:
        return {"support_vectors": self.support_vectors.tolist(),
                "dual_coef": self.dual_coef.tolist(),
                "intercept": self.intercept, "gamma": self.gamma}

    @classmethod
    def from_dict(cls, data: Mapping) -> "_RbfSvrPack":
        return cls(np.array(data["support_vectors"]), np.array(data["dual_coef"]),
                   data["intercept"], data["gamma"])


class _ForestPack:
    """Random-forest classifier evaluated from exported split arrays."""

    def __init__(self, classes: np.ndarray, trees: list[dict]) -> None:
        self.classes = np.asarray(classes)
        self.trees = trees

    @classmethod
    def from_sklearn(cls, forest: RandomForestClassifier) -> "_ForestPack":
        trees = []
        for est in forest.estimators_:
            t = est.tree_
            trees.append({
                "children_left": t.children_left.astype(int),
                "children_right": t.children_right.astype(int),
                "feature": t.feature.astype(int),
                "threshold": t.threshold.astype(float),
                "value": t.value[:, 0, :].astype(float),
            })
        return cls(forest.classes_, trees)

    def predict_proba(self, x: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(x)
        proba = np.zeros((x.shape[0], len(self.classes)))
        for tree in self.trees:
            left, right = tree["children_left"], tree["children_right"]
            feature, threshold = tree["feature"], tree["threshold"]
            value = tree["value"]
            node = np.zeros(x.shape[0], dtype=np.intp)
            active = left[node] != -1
            while active.any():
                f = feature[node[active]]
                goes_left = x[active, f] <= threshold[node[active]]
                node[active] = np.where(goes_left, left[node[active]],
                                        right[node[active]])
                active = left[node] != -1
            counts = value[node]
            proba += counts / counts.sum(axis=1, keepdims=True)
        return proba / len(self.trees)

    def predict(self, x: np.ndarray) -> np.ndarray:
        return self.classes[self.predict_proba(x).argmax(axis=1)]

    def to_dict(self) -> dict:
        return {"classes": self.classes.tolist(),
                "trees": [{k: v.tolist() for k, v in t.items()} for t in self.trees]}

    @classmethod
    def from_dict(cls, data: Mapping) -> "_ForestPack":
        trees = []
        for t in data["trees"]:
            trees.append({
                "children_left": np.array(t["children_left"], dtype=int),
                "children_right": np.array(t["children_right"], dtype=int),
                "feature": np.array(t["feature"], dtype=int),
                "threshold": np.array(t["threshold"], dtype=float),
                "value": np.array(t["value"], dtype=float),
            })
        return cls(np.array(data["classes"]), trees)


# ---------------------------------------------------------------------------
# Predictor kinds.
# ---------------------------------------------------------------------------

class SvrEaiPredictor(UtilityPredictor):
    """Per-remaining-column epsilon-insensitive RBF regression on prefix evidence."""

    kind = KIND_SVR

    def __init__(self, e: int, cost: float = 1.0, epsilon: float = 0.1) -> None:
        super().__init__()
        self.e = int(e)
        self.cost = float(cost)
        self.epsilon = float(epsilon)
        self._packs: list[_RbfSvrPack] = []

    def fit(self, train: UtilityDataset) -> "SvrEaiPredictor":
        demo = self._start_fit(train, self.e)
        leaf = train.leaf_matrix
        features = np.hstack([demo, leaf[:, : self.e]])
        variance = float(features.var())
        gamma = 1.0 / (features.shape[1] * variance) if variance > 0 else 1.0
        self._packs = []
        for target in range(self.e, train.n_leaves):
            svr = SVR(kernel="rbf", C=self.cost, epsilon=self.epsilon, gamma="scale")
            svr.fit(features, leaf[:, target])
            self._packs.append(_RbfSvrPack.from_sklearn(svr, gamma))
        self.evidence = self._prefix_evidence(self.e)
        return self

    def _fill_matrix(self, demo, leaf_answers, draw_seeds):
        features = np.hstack([demo, leaf_answers])
        out = np.zeros((features.shape[0], len(self.leaf_columns)))
        for offset, pack in enumerate(self._packs):
            out[:, self.e + offset] = pack.predict(features)
        return out

    def _state_dict(self) -> dict:
        return {"e": self.e, "cost": self.cost, "epsilon": self.epsilon,
                "regressors": [p.to_dict() for p in self._packs]}

    def _load_state(self, state: Mapping) -> None:
        self.e = int(state["e"])
        self.cost = float(state["cost"])
        self.epsilon = float(state["epsilon"])
        self._packs = [_RbfSvrPack.from_dict(p) for p in state["regressors"]]


class CramerPredictor(UtilityPredictor):
    """Cluster the population, pick the most informative questions with a
    depth-bounded random forest, fill unasked utilities with the predicted
    cluster's centroid.

    The evidence count ``e`` is a budget, not a target: separating k
    subpopulations takes about log2(k) binary splits, so the predictor asks
    min(e, ceil(log2(k))) utility questions and its accuracy stays stable
    once the budget exceeds what identification needs.
    """

    kind = KIND_CRAMER

    def __init__(self, e: int, k_grid: Sequence[int] = DEFAULT_K_GRID,
                 n_trees: int = 100, min_split: int = 2, min_leaf: int = 1,
                 cluster_seed: int = 0, forest_seed: int = 0) -> None:
        super().__init__()
        self.e = int(e)
        self.k_grid = tuple(sorted(set(int(k) for k in k_grid)))
        self.n_trees = int(n_trees)
        self.min_split = int(min_split)
        self.min_leaf = int(min_leaf)
        self.cluster_seed = int(cluster_seed)
        self.forest_seed = int(forest_seed)
        self.centroids: np.ndarray | None = None
        self._forest: _ForestPack | None = None

    def fit(self, train: UtilityDataset,
            clustering: KMeansResult | None = None) -> "CramerPredictor":
        demo = self._start_fit(train, self.e)
        leaf = train.leaf_matrix
        if clustering is None:
            clustering = choose_k(leaf, self.k_grid, rng_seed=self.cluster_seed)
        self.centroids = clustering.centroids
        labels = clustering.labels

        # The depth budget counts asked arguments; demographics are free
        # evidence, so they extend the budget without costing questions.
        state = self.forest_seed & 0x7FFFFFFF
        full = RandomForestClassifier(
            n_estimators=self.n_trees, max_depth=self.e + train.n_demo,
            min_samples_split=self.min_split, min_samples_leaf=self.min_leaf,
            random_state=state)
        full.fit(np.hstack([demo, leaf]), labels)
        leaf_importance = full.feature_importances_[train.n_demo:]
        ranked = np.argsort(-leaf_importance, kind="stable")
        k = self.centroids.shape[0]
        needed = max(1, math.ceil(math.log2(k))) if k > 1 else 1
        n_asked = min(self.e, needed)
        asked_ix = np.sort(ranked[:n_asked])

        restricted = RandomForestClassifier(
            n_estimators=self.n_trees, max_depth=n_asked + train.n_demo,
            min_samples_split=self.min_split, min_samples_leaf=self.min_leaf,
            random_state=state)
        restricted.fit(np.hstack([demo, leaf[:, asked_ix]]), labels)
        self._forest = _ForestPack.from_sklearn(restricted)
        asked_cols = tuple(self.leaf_columns[i] for i in asked_ix)
        self.evidence = EvidenceSpec(mode="selected", count=self.e,
                                     columns=self.demo_columns + asked_cols)
        return self

    def _fill_matrix(self, demo, leaf_answers, draw_seeds):
        features = np.hstack([demo, leaf_answers])
        clusters = self._forest.predict(features).astype(int)
        return self.centroids[clusters].copy()

    def _state_dict(self) -> dict:
        return {"e": self.e, "k_grid": list(self.k_grid), "n_trees": self.n_trees,
                "min_split": self.min_split, "min_leaf": self.min_leaf,
                "cluster_seed": self.cluster_seed, "forest_seed": self.forest_seed,
                "centroids": self.centroids.tolist(),
                "forest": self._forest.to_dict()}

    def _load_state(self, state: Mapping) -> None:
        self.e = int(state["e"])
        self.k_grid = tuple(state["k_grid"])
        self.n_trees = int(state["n_trees"])
        self.min_split = int(state["min_split"])
        self.min_leaf = int(state["min_leaf"])
        self.cluster_seed = int(state["cluster_seed"])
        self.forest_seed = int(state["forest_seed"])
        self.centroids = np.array(state["centroids"], dtype=float)
        self._forest = _ForestPack.from_dict(state["forest"])


class ClumerPredictor(UtilityPredictor):
    """Clustering in evidence space with per-cluster mean fill."""

    kind = KIND_CLUMER

    def __init__(self, e: int, k_grid: Sequence[int] = DEFAULT_K_GRID,
                 cluster_seed: int = 0) -> None:
        super().__init__()
        self.e = int(e)
        self.k_grid = tuple(sorted(set(int(k) for k in k_grid)))
        self.cluster_seed = int(cluster_seed)
        self.centroids: np.ndarray | None = None
        self.fill_means: np.ndarray | None = None

    def fit(self, train: UtilityDataset) -> "ClumerPredictor":
        demo = self._start_fit(train, self.e)
        leaf = train.leaf_matrix
        space = np.hstack([demo, leaf[:, : self.e]])
        clustering = choose_k(space, self.k_grid, rng_seed=self.cluster_seed)
        self.centroids = clustering.centroids
        remaining = leaf[:, self.e:]
        self.fill_means = np.stack([
            remaining[clustering.labels == c].mean(axis=0)
            for c in range(clustering.k)])
        self.evidence = self._prefix_evidence(self.e)
        return self

    def _fill_matrix(self, demo, leaf_answers, draw_seeds):
        space = np.hstack([demo, leaf_answers])
        nearest = cdist(space, self.centroids).argmin(axis=1)
        out = np.zeros((space.shape[0], len(self.leaf_columns)))
        out[:, self.e:] = self.fill_means[nearest]
        return out

    def _state_dict(self) -> dict:
        return {"e": self.e, "k_grid": list(self.k_grid),
                "cluster_seed": self.cluster_seed,
                "centroids": self.centroids.tolist(),
                "fill_means": self.fill_means.tolist()}

    def _load_state(self, state: Mapping) -> None:
        self.e = int(state["e"])
        self.k_grid = tuple(state["k_grid"])
        self.cluster_seed = int(state["cluster_seed"])
        self.centroids = np.array(state["centroids"], dtype=float)
        self.fill_means = np.array(state["fill_means"], dtype=float)


class MeanRPredictor(UtilityPredictor):
    """Fills every remaining column with its training mean."""

    kind = KIND_MEANR

    def __init__(self, e: int) -> None:
        super().__init__()
        self.e = int(e)
        self.column_means: np.ndarray | None = None

    def fit(self, train: UtilityDataset) -> "MeanRPredictor":
        self._start_fit(train, self.e)
        self.column_means = train.leaf_matrix[:, self.e:].mean(axis=0)
        self.evidence = self._prefix_evidence(self.e)
        return self

    def _fill_matrix(self, demo, leaf_answers, draw_seeds):
        out = np.zeros((leaf_answers.shape[0], len(self.leaf_columns)))
        out[:, self.e:] = self.column_means
        return out

    def _state_dict(self) -> dict:
        return {"e": self.e, "column_means": self.column_means.tolist()}

    def _load_state(self, state: Mapping) -> None:
        self.e = int(state["e"])
        self.column_means = np.array(state["column_means"], dtype=float)


class RandRPredictor(UtilityPredictor):
    """Uniform random integers within each remaining column's training bounds."""

    kind = KIND_RANDR

    def __init__(self, e: int, seed: int = 0) -> None:
        super().__init__()
        self.e = int(e)
        self.seed = int(seed)
        self.low: np.ndarray | None = None
        self.high: np.ndarray | None = None

    def fit(self, train: UtilityDataset) -> "RandRPredictor":
        self._start_fit(train, self.e)
        remaining = train.leaf_matrix[:, self.e:]
        self.low = np.floor(remaining.min(axis=0)).astype(int)
        self.high = np.ceil(remaining.max(axis=0)).astype(int)
        self.evidence = self._prefix_evidence(self.e)
        return self

    def _fill_matrix(self, demo, leaf_answers, draw_seeds):
        n = leaf_answers.shape[0]
        if draw_seeds is None:
            draw_seeds = [0] * n
        out = np.zeros((n, len(self.leaf_columns)))
        for i in range(n):
            rng = np.random.default_rng(
                [self.seed & 0xFFFFFFFFFFFFFFFF, int(draw_seeds[i]) & 0xFFFFFFFFFFFFFFFF])
            out[i, self.e:] = rng.integers(self.low, self.high + 1)
        return out

    def _state_dict(self) -> dict:
        return {"e": self.e, "seed": self.seed,
                "low": self.low.tolist(), "high": self.high.tolist()}

    def _load_state(self, state: Mapping) -> None:
        self.e = int(state["e"])
        self.seed = int(state["seed"])
        self.low = np.array(state["low"], dtype=int)
        self.high = np.array(state["high"], dtype=int)


class OraclePredictor(UtilityPredictor):
    """Diagnostic stub that echoes the user's true utilities (asks everything)."""

    kind = KIND_ORACLE

    def __init__(self) -> None:
        super().__init__()

    def fit(self, train: UtilityDataset) -> "OraclePredictor":
        self.demo_columns = train.demo_columns
        self.leaf_columns = train.leaf_columns
        self.evidence = EvidenceSpec(mode="prefix", count=train.n_leaves,
                                     columns=train.demo_columns + train.leaf_columns)
        return self

    def _fill_matrix(self, demo, leaf_answers, draw_seeds):
        return leaf_answers.copy()

    def _state_dict(self) -> dict:
        return {}

    def _load_state(self, state: Mapping) -> None:
        pass


# ---------------------------------------------------------------------------
# Factories, dispatch, serialization entry points.
# ---------------------------------------------------------------------------

_KIND_TO_CLASS = {
    KIND_SVR: SvrEaiPredictor,
    KIND_CRAMER: CramerPredictor,
    KIND_CLUMER: ClumerPredictor,
    KIND_MEANR: MeanRPredictor,
    KIND_RANDR: RandRPredictor,
    KIND_ORACLE: OraclePredictor,
}


def fit_eai_svr(train: UtilityDataset, e: int, cost: float = 1.0,
                epsilon: float = 0.1) -> SvrEaiPredictor:
    return SvrEaiPredictor(e, cost=cost, epsilon=epsilon).fit(train)


def fit_cramer(train: UtilityDataset, e: int, k_grid: Sequence[int] = DEFAULT_K_GRID,
               n_trees: int = 100, min_split: int = 2, min_leaf: int = 1,
               cluster_seed: int = 0, forest_seed: int = 0,
               clustering: KMeansResult | None = None) -> CramerPredictor:
    predictor = CramerPredictor(e, k_grid=k_grid, n_trees=n_trees,
                                min_split=min_split, min_leaf=min_leaf,
                                cluster_seed=cluster_seed, forest_seed=forest_seed)
    return predictor.fit(train, clustering=clustering)


def fit_baseline(train: UtilityDataset, e: int, kind: str,
                 seed: int = 0, k_grid: Sequence[int] = DEFAULT_K_GRID) -> UtilityPredictor:
    if kind == KIND_RANDR:
        return RandRPredictor(e, seed=seed).fit(train)
    if kind == KIND_MEANR:
        return MeanRPredictor(e).fit(train)
    if kind == KIND_CLUMER:
        return ClumerPredictor(e, k_grid=k_grid, cluster_seed=seed).fit(train)
    raise PredictorError(f"unknown baseline kind {kind!r}")


def predict_utilities(predictor: UtilityPredictor, answers: Mapping[str, float],
                      draw_seed: int | None = None) -> np.ndarray:
    return predictor.predict(answers, draw_seed=draw_seed)


def ask_plan(predictor: UtilityPredictor,
             prompts: Mapping[str, str] | None = None) -> list[Question]:
    return predictor.ask_plan(prompts=prompts)


def predictor_to_dict(predictor: UtilityPredictor) -> dict:
    return predictor.to_dict()


def predictor_from_dict(data: Mapping) -> UtilityPredictor:
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise PredictorError(f"unsupported predictor format_version {version!r}")
    kind = data.get("kind")
    if kind not in _KIND_TO_CLASS:
        raise PredictorError(f"unknown predictor kind {kind!r}")
    return _KIND_TO_CLASS[kind]._from_dict(data)


def save_predictor_json(path: str | Path, predictor: UtilityPredictor) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(predictor_to_dict(predictor), fh)
        fh.write("\n")


def load_predictor_json(path: str | Path) -> UtilityPredictor:
    with open(path, "r", encoding="utf-8") as fh:
        return predictor_from_dict(json.load(fh))
