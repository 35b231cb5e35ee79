"""Simulation protocol: grid runs, argument-distance metrics, and aggregation.

For every (tree, dataset, evidence count, fold, predictor) cell the harness
fits the predictor on the training folds, plays two dialogues per test user
(gold with their true utilities, predicted with the model fill), and compares
only the final leaves. The mean argument distance (mad) is the mean Manhattan
distance between the proponent/opponent utilities of the two leaves; its two
addends are the proponent and opponent mean absolute errors, so
``mad == mae_p + mae_o`` holds exactly per record.

Aggregation happens twice: over the k folds of each (tree, dataset, e) group
(mean and sample standard deviation), then over trees and datasets per
evidence percentage, cumulatively over e in {1..E} with E = ceil(Ep*(Le-1))
(the ``point`` mode instead keeps only e == E). Spread at the second stage is
the pooled standard deviation over the contributing fold groups.
"""

from __future__ import annotations

import csv
import json
import math
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .dataset import UtilityDataset
from .policy import TreeArrays, sim_dialogue_leaves
from .predictors import (ALL_KINDS, KIND_CLUMER, KIND_CRAMER, KIND_MEANR,
                         KIND_ORACLE, KIND_RANDR, KIND_SVR, OraclePredictor,
                         UtilityPredictor, fit_baseline, fit_cramer, fit_eai_svr)
from .clustering import KMeansResult, choose_k
from .synth import ClusterSpec, TreeGenSpec, gen_cluster_dataset, gen_proponent_utilities, gen_tree
from .tree import DialogueTree

# Seed stream tags so every derived generator is independent.
_SEED_TREE = 1
_SEED_HEIGHT = 2
_SEED_UP = 3
_SEED_DATASET = 4
_SEED_DSPARAMS = 5
_SEED_FOLDS = 6
_SEED_USER = 7
_SEED_CLUSTER = 8
_SEED_FOREST = 9
_SEED_RANDR = 10
_SEED_DRAW = 11

RESULTS_CSV_COLUMNS = ("tree_id", "dataset_id", "predictor", "e", "Ep", "fold",
                       "mad", "mae_p", "mae_o", "n_test_users", "seed")
AGGREGATE_CSV_COLUMNS = ("predictor", "Ep", "mode", "mean_mad", "std_mad",
                         "mean_mae_p", "mean_mae_o", "cells")


class ConfigError(ValueError):
    """Raised for invalid grid configurations."""


class EvaluationError(ValueError):
    """Raised for inconsistent records during aggregation."""


def derive_seed(*parts: int) -> int:
    """Deterministic 63-bit seed from a tuple of non-negative integer parts."""
    safe = [int(p) & 0x7FFFFFFFFFFFFFFF for p in parts]
    return int(np.random.SeedSequence(safe).generate_state(1, dtype=np.uint64)[0]
               & 0x7FFFFFFFFFFFFFFF)


def evidence_count(ep: float, n_leaves: int) -> int:
    """Askable-question count for an evidence percentage: ceil(Ep * (Le - 1))."""
    if not 0.0 < ep <= 1.0:
        raise ConfigError(f"evidence percentage {ep} outside (0, 1]")
    return math.ceil(ep * (n_leaves - 1))


@dataclass(frozen=True)
class GridConfig:
    """Full parameterization of a simulation grid."""

    num_trees: int = 10
    num_datasets_per_tree: int = 10
    dataset_size: int = 2000
    heights: tuple[int, ...] = (4, 5, 6)
    branching_weights: Mapping[int, float] = field(
        default_factory=lambda: {2: 0.45, 3: 0.45, 4: 0.10})
    proponent_values: tuple[float, ...] = tuple(range(1, 12))
    cluster_counts: tuple[int, ...] = (4, 6, 8, 10)
    center_widths: tuple[float, ...] = (0.5, 1.0, 2.5, 3.0)
    cluster_variance: float = 1.0
    delta: float = 1.0
    k_folds: int = 5
    evidence_percentages: tuple[float, ...] = tuple(round(0.1 * i, 1) for i in range(1, 11))
    predictors: tuple[str, ...] = (KIND_SVR, KIND_CRAMER, KIND_CLUMER,
                                   KIND_MEANR, KIND_RANDR)
    svr_cost: float = 1.0
    svr_epsilon: float = 0.1
    k_grid: tuple[int, ...] = (4, 6, 8, 10)
    forest_trees: int = 100
    master_seed: int = 0

    def validate(self) -> None:
        problems = []
        if self.num_trees < 1:
            problems.append("num_trees must be >= 1")
        if self.num_datasets_per_tree < 1:
            problems.append("num_datasets_per_tree must be >= 1")
        if self.k_folds < 2:
            problems.append("k_folds must be >= 2")
        if self.dataset_size < 2 * self.k_folds:
            problems.append("dataset_size too small for the fold count")
        if not self.heights:
            problems.append("heights must be non-empty")
        if not self.evidence_percentages:
            problems.append("evidence_percentages must be non-empty")
        for ep in self.evidence_percentages:
            if not 0.0 < ep <= 1.0:
                problems.append(f"evidence percentage {ep} outside (0, 1]")
        if not self.predictors:
            problems.append("predictors must be non-empty")
        known = set(ALL_KINDS) | {KIND_ORACLE}
        for kind in self.predictors:
            if kind not in known:
                problems.append(f"unknown predictor kind {kind!r}")
        if not 0.0 < self.delta <= 1.0:
            problems.append("delta must be in (0, 1]")
        if not self.cluster_counts or not self.center_widths:
            problems.append("cluster_counts and center_widths must be non-empty")
        if problems:
            raise ConfigError("; ".join(problems))

    @classmethod
    def from_dict(cls, data: Mapping) -> "GridConfig":
        table = dict(data.get("grid", data))
        kwargs: dict = {}
        simple = {"num_trees", "num_datasets_per_tree", "dataset_size",
                  "cluster_variance", "delta", "k_folds", "svr_cost",
                  "svr_epsilon", "forest_trees", "master_seed"}
        tuples = {"heights", "proponent_values", "cluster_counts",
                  "center_widths", "evidence_percentages", "predictors", "k_grid"}
        for key, value in table.items():
            if key in simple:
                kwargs[key] = value
            elif key in tuples:
                kwargs[key] = tuple(value)
            elif key == "branching_weights":
                kwargs[key] = {int(k): float(v) for k, v in value.items()}
            else:
                raise ConfigError(f"unknown config key {key!r}")
        config = cls(**kwargs)
        config.validate()
        return config

    @classmethod
    def from_file(cls, path: str | Path) -> "GridConfig":
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        if path.suffix.lower() == ".json":
            return cls.from_dict(json.loads(text))
        if sys.version_info >= (3, 11):
            import tomllib
        else:
            import tomli as tomllib
        return cls.from_dict(tomllib.loads(text))

    def to_dict(self) -> dict:
        return {
            "num_trees": self.num_trees,
            "num_datasets_per_tree": self.num_datasets_per_tree,
            "dataset_size": self.dataset_size,
            "heights": list(self.heights),
            "branching_weights": {str(k): v for k, v in self.branching_weights.items()},
            "proponent_values": list(self.proponent_values),
            "cluster_counts": list(self.cluster_counts),
            "center_widths": list(self.center_widths),
            "cluster_variance": self.cluster_variance,
            "delta": self.delta,
            "k_folds": self.k_folds,
            "evidence_percentages": list(self.evidence_percentages),
            "predictors": list(self.predictors),
            "svr_cost": self.svr_cost,
            "svr_epsilon": self.svr_epsilon,
            "k_grid": list(self.k_grid),
            "forest_trees": self.forest_trees,
            "master_seed": self.master_seed,
        }


@dataclass(frozen=True)
class EvaluationRecord:
    """One simulated cell: metrics for (tree, dataset, e, fold, predictor)."""

    tree_id: str
    dataset_id: str
    predictor: str
    e: int
    ep: float
    fold: int
    mad: float
    mae_p: float
    mae_o: float
    n_test_users: int
    seed: int
    runtime_s: float = 0.0

    @property
    def key(self) -> tuple:
        return (self.tree_id, self.dataset_id, self.predictor, self.e, self.fold)


@dataclass(frozen=True)
class KfoldRow:
    tree_id: str
    dataset_id: str
    predictor: str
    e: int
    ep: float
    mean_mad: float
    std_mad: float
    mean_mae_p: float
    mean_mae_o: float
    n_folds: int


@dataclass(frozen=True)
class AggregateRow:
    predictor: str
    ep: float
    mode: str
    mean_mad: float
    std_mad: float
    mean_mae_p: float
    mean_mae_o: float
    cells: int


@dataclass(frozen=True)
class TreeInfo:
    tree_id: str
    height: int
    n_leaves: int


def compute_mad(pairs: Sequence[tuple[str, str]],
                proponent_utilities: Mapping[str, float],
                opponent_rows: Sequence[Mapping[str, float]]
                ) -> tuple[float, float, float]:
    """(mad, mae_p, mae_o) over (true leaf, predicted leaf) pairs.

    ``opponent_rows[j]`` holds user j's true opponent utilities; the proponent
    utilities are shared. ``mad == mae_p + mae_o`` by construction.
    """
    if not pairs:
        raise EvaluationError("compute_mad needs at least one leaf pair")
    if len(pairs) != len(opponent_rows):
        raise EvaluationError("one opponent utility row is required per pair")
    p_err, o_err = [], []
    for (true_leaf, pred_leaf), row in zip(pairs, opponent_rows):
        p_err.append(abs(proponent_utilities[true_leaf] - proponent_utilities[pred_leaf]))
        o_err.append(abs(row[true_leaf] - row[pred_leaf]))
    mae_p = float(np.mean(p_err))
    mae_o = float(np.mean(o_err))
    return mae_p + mae_o, mae_p, mae_o


# ---------------------------------------------------------------------------
# Cell execution.
# ---------------------------------------------------------------------------

class CellRunner:
    """Runs every cell of one (tree, dataset) pair, caching fold-level work."""

    def __init__(self, tree_id: str, dataset_id: str, tree: DialogueTree,
                 u_p: Mapping[str, float], dataset: UtilityDataset,
                 config: GridConfig, tree_index: int = 0,
                 dataset_index: int = 0) -> None:
        self.tree_id = tree_id
        self.dataset_id = dataset_id
        self.tree = tree
        self.arrays = TreeArrays(tree)
        self.u_p_map = dict(u_p)
        self.u_p_vec = np.array([u_p[leaf] for leaf in tree.leaves])
        self.dataset = dataset
        self.config = config
        self.t = tree_index
        self.i = dataset_index
        rng = np.random.default_rng(
            derive_seed(config.master_seed, _SEED_FOLDS, self.t, self.i))
        self.folds = np.array_split(rng.permutation(dataset.n_rows), config.k_folds)
        self.user_seeds = np.array([
            derive_seed(config.master_seed, _SEED_USER, self.t, self.i, j)
            for j in range(dataset.n_rows)], dtype=np.int64)
        self.draw_seeds = np.array([
            derive_seed(config.master_seed, _SEED_DRAW, self.t, self.i, j)
            for j in range(dataset.n_rows)], dtype=np.int64)
        self._gold: dict[int, np.ndarray] = {}
        self._cramer_clusters: dict[int, KMeansResult] = {}
        self._train_cache: dict[int, UtilityDataset] = {}

    @property
    def n_leaves(self) -> int:
        return self.dataset.n_leaves

    def train_test(self, fold: int) -> tuple[UtilityDataset, np.ndarray]:
        if fold not in self._train_cache:
            train_ix = np.concatenate([f for k, f in enumerate(self.folds) if k != fold])
            self._train_cache[fold] = self.dataset.subset(train_ix)
        return self._train_cache[fold], self.folds[fold]

    def gold_leaves(self, fold: int) -> np.ndarray:
        if fold not in self._gold:
            test_ix = self.folds[fold]
            self._gold[fold] = sim_dialogue_leaves(
                self.arrays, self.u_p_vec, self.dataset.leaf_matrix[test_ix],
                self.config.delta, self.user_seeds[test_ix])
        return self._gold[fold]

    def fit(self, kind: str, e: int, fold: int) -> UtilityPredictor:
        train, _ = self.train_test(fold)
        cfg = self.config
        if kind == KIND_SVR:
            return fit_eai_svr(train, e, cost=cfg.svr_cost, epsilon=cfg.svr_epsilon)
        if kind == KIND_CRAMER:
            if fold not in self._cramer_clusters:
                self._cramer_clusters[fold] = choose_k(
                    train.leaf_matrix, cfg.k_grid,
                    rng_seed=derive_seed(cfg.master_seed, _SEED_CLUSTER,
                                         self.t, self.i, fold))
            return fit_cramer(
                train, e, k_grid=cfg.k_grid, n_trees=cfg.forest_trees,
                cluster_seed=derive_seed(cfg.master_seed, _SEED_CLUSTER,
                                         self.t, self.i, fold),
                forest_seed=derive_seed(cfg.master_seed, _SEED_FOREST,
                                        self.t, self.i, fold),
                clustering=self._cramer_clusters[fold])
        if kind == KIND_ORACLE:
            return OraclePredictor().fit(train)
        seed_tag = _SEED_RANDR if kind == KIND_RANDR else _SEED_CLUSTER
        return fit_baseline(train, e, kind, k_grid=cfg.k_grid,
                            seed=derive_seed(cfg.master_seed, seed_tag,
                                             self.t, self.i, fold, e))

    def run_cell(self, kind: str, e: int, fold: int) -> EvaluationRecord:
        started = time.perf_counter()
        predictor = self.fit(kind, e, fold)
        _, test_ix = self.train_test(fold)
        test = self.dataset.subset(test_ix)
        predicted = predictor.predict_matrix(test, draw_seeds=self.draw_seeds[test_ix])
        pred_leaves = sim_dialogue_leaves(
            self.arrays, self.u_p_vec, predicted, self.config.delta,
            self.user_seeds[test_ix])
        gold_leaves = self.gold_leaves(fold)
        true_rows = self.dataset.leaf_matrix[test_ix]
        users = np.arange(len(test_ix))
        mae_p = float(np.abs(self.u_p_vec[gold_leaves] - self.u_p_vec[pred_leaves]).mean())
        mae_o = float(np.abs(true_rows[users, gold_leaves]
                             - true_rows[users, pred_leaves]).mean())
        return EvaluationRecord(
            tree_id=self.tree_id, dataset_id=self.dataset_id, predictor=kind,
            e=e, ep=e / (self.n_leaves - 1), fold=fold, mad=mae_p + mae_o,
            mae_p=mae_p, mae_o=mae_o, n_test_users=len(test_ix),
            seed=derive_seed(self.config.master_seed, self.t, self.i, fold),
            runtime_s=time.perf_counter() - started)

    def evidence_values(self) -> list[int]:
        top = max(evidence_count(ep, self.n_leaves)
                  for ep in self.config.evidence_percentages)
        return list(range(1, min(top, self.n_leaves - 1) + 1))


def build_tree_bundle(config: GridConfig, t: int) -> tuple[TreeInfo, DialogueTree,
                                                           dict[str, float]]:
    """Tree t of the grid: random height, random structure, random proponent utilities."""
    heights = sorted(config.heights)
    h_rng = np.random.default_rng(derive_seed(config.master_seed, _SEED_HEIGHT, t))
    height = int(h_rng.choice(heights))
    tree = gen_tree(TreeGenSpec(
        height=height, branching_weights=dict(config.branching_weights),
        rng_seed=derive_seed(config.master_seed, _SEED_TREE, t)))
    u_p = gen_proponent_utilities(tree, config.proponent_values,
                                  rng_seed=derive_seed(config.master_seed, _SEED_UP, t))
    return TreeInfo(f"T{t:02d}", height, len(tree.leaves)), tree, u_p


def build_dataset(config: GridConfig, tree: DialogueTree, t: int, i: int) -> UtilityDataset:
    """Dataset i of tree t: cluster count and center width drawn per dataset."""
    p_rng = np.random.default_rng(derive_seed(config.master_seed, _SEED_DSPARAMS, t, i))
    c = int(p_rng.choice(sorted(config.cluster_counts)))
    cw = float(p_rng.choice(sorted(config.center_widths)))
    spec = ClusterSpec(num_clusters=c, center_width=cw,
                       cluster_variance=config.cluster_variance,
                       dataset_size=config.dataset_size, dims=len(tree.leaves),
                       rng_seed=derive_seed(config.master_seed, _SEED_DATASET, t, i))
    return gen_cluster_dataset(spec, leaf_ids=tree.leaves)


def _pair_worker(args: tuple) -> list[EvaluationRecord]:
    config, t, i, done_keys = args
    info, tree, u_p = build_tree_bundle(config, t)
    dataset = build_dataset(config, tree, t, i)
    runner = CellRunner(info.tree_id, f"D{i:02d}", tree, u_p, dataset, config,
                        tree_index=t, dataset_index=i)
    records = []
    for e in runner.evidence_values():
        for kind in config.predictors:
            for fold in range(config.k_folds):
                key = (info.tree_id, f"D{i:02d}", kind, e, fold)
                if key in done_keys:
                    continue
                records.append(runner.run_cell(kind, e, fold))
    return records


@dataclass
class GridResult:
    records: list[EvaluationRecord]
    trees: dict[str, TreeInfo]


def run_grid(config: GridConfig, workers: int = 1, resume_records:
             Iterable[EvaluationRecord] = (), progress:
             Callable[[str], None] | None = None) -> GridResult:
    """Run every cell of the grid; deterministic per master seed and resumable."""
    config.validate()
    previous = list(resume_records)
    done_keys = frozenset(r.key for r in previous)
    trees = {}
    for t in range(config.num_trees):
        info, _, _ = build_tree_bundle(config, t)
        trees[info.tree_id] = info
    tasks = [(config, t, i, done_keys)
             for t in range(config.num_trees)
             for i in range(config.num_datasets_per_tree)]
    records = list(previous)
    if workers <= 1:
        for task in tasks:
            records.extend(_pair_worker(task))
            if progress:
                progress(f"pair T{task[1]:02d}/D{task[2]:02d} done")
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for task, result in zip(tasks, pool.map(_pair_worker, tasks)):
                records.extend(result)
                if progress:
                    progress(f"pair T{task[1]:02d}/D{task[2]:02d} done")
    records.sort(key=lambda r: r.key)
    return GridResult(records=records, trees=trees)


# ---------------------------------------------------------------------------
# Aggregation.
# ---------------------------------------------------------------------------

def aggregate_kfold(records: Sequence[EvaluationRecord],
                    expected_folds: int | None = None) -> list[KfoldRow]:
    """Mean and sample standard deviation over folds per (tree, dataset, e, predictor)."""
    groups: dict[tuple, list[EvaluationRecord]] = {}
    for record in records:
        groups.setdefault(
            (record.tree_id, record.dataset_id, record.predictor, record.e), []
        ).append(record)
    incomplete = []
    rows = []
    for key in sorted(groups):
        cells = groups[key]
        if expected_folds is not None and len(cells) != expected_folds:
            incomplete.append((key, len(cells)))
            continue
        mads = np.array([c.mad for c in cells])
        rows.append(KfoldRow(
            tree_id=key[0], dataset_id=key[1], predictor=key[2], e=key[3],
            ep=cells[0].ep,
            mean_mad=float(mads.mean()),
            std_mad=float(mads.std(ddof=1)) if len(mads) > 1 else 0.0,
            mean_mae_p=float(np.mean([c.mae_p for c in cells])),
            mean_mae_o=float(np.mean([c.mae_o for c in cells])),
            n_folds=len(cells)))
    if incomplete:
        raise EvaluationError(f"incomplete fold groups: {incomplete[:10]}")
    return rows


def aggregate_evidence(kfold_rows: Sequence[KfoldRow], ep_values: Sequence[float],
                       leaf_counts: Mapping[str, int], mode: str = "cumulative"
                       ) -> list[AggregateRow]:
    """Average the fold means over trees, datasets, and evidence per percentage.

    ``cumulative`` pools every e in {1..E} (E tree-specific); ``point`` keeps
    only e == E. Spread is the pooled standard deviation over fold groups.
    """
    if mode not in ("cumulative", "point"):
        raise EvaluationError(f"unknown aggregation mode {mode!r}")
    predictors = sorted(set(r.predictor for r in kfold_rows))
    out = []
    for predictor in predictors:
        mine = [r for r in kfold_rows if r.predictor == predictor]
        for ep in ep_values:
            chosen = []
            for row in mine:
                n_leaves = leaf_counts[row.tree_id]
                top = evidence_count(ep, n_leaves)
                keep = row.e <= top if mode == "cumulative" else row.e == top
                if keep:
                    chosen.append(row)
            if not chosen:
                continue
            pooled_num = sum((r.n_folds - 1) * r.std_mad ** 2 for r in chosen)
            pooled_den = sum(r.n_folds - 1 for r in chosen)
            out.append(AggregateRow(
                predictor=predictor, ep=float(ep), mode=mode,
                mean_mad=float(np.mean([r.mean_mad for r in chosen])),
                std_mad=math.sqrt(pooled_num / pooled_den) if pooled_den else 0.0,
                mean_mae_p=float(np.mean([r.mean_mae_p for r in chosen])),
                mean_mae_o=float(np.mean([r.mean_mae_o for r in chosen])),
                cells=len(chosen)))
    return out


def optimal_evidence(per_e_regret: Mapping[int, float],
                     effort: Callable[[int], float]) -> int:
    """Evidence count minimizing total regret plus effort; ties go to smaller e."""
    if not per_e_regret:
        raise EvaluationError("empty regret map")
    domain = sorted(per_e_regret)
    if domain != list(range(domain[0], domain[-1] + 1)):
        raise EvaluationError(f"regret domain has gaps: {domain}")
    efforts = [float(effort(e)) for e in domain]
    for a, b in zip(efforts, efforts[1:]):
        if b < a:
            raise EvaluationError("effort function must be monotonically increasing")
    costs = [per_e_regret[e] + eff for e, eff in zip(domain, efforts)]
    best = min(range(len(domain)), key=lambda ix: (costs[ix], domain[ix]))
    return domain[best]


def linear_effort(lam: float) -> Callable[[int], float]:
    if lam < 0:
        raise EvaluationError("effort slope must be >= 0")
    return lambda e: lam * e


def regret_by_evidence(records: Sequence[EvaluationRecord],
                       predictor: str) -> dict[int, float]:
    """Total per-user regret per evidence count: sum of mad * n over matching cells."""
    per_e: dict[int, float] = {}
    for record in records:
        if record.predictor != predictor:
            continue
        per_e[record.e] = per_e.get(record.e, 0.0) + record.mad * record.n_test_users
    if not per_e:
        raise EvaluationError(f"no records for predictor {predictor!r}")
    return per_e


# ---------------------------------------------------------------------------
# CSV persistence. Floats are written with repr so reruns are byte-identical.
# ---------------------------------------------------------------------------

def write_records_csv(path: str | Path, records: Sequence[EvaluationRecord]) -> None:
    ordered = sorted(records, key=lambda r: r.key)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_CSV_COLUMNS)
        for r in ordered:
            writer.writerow([r.tree_id, r.dataset_id, r.predictor, r.e, repr(r.ep),
                             r.fold, repr(r.mad), repr(r.mae_p), repr(r.mae_o),
                             r.n_test_users, r.seed])


def read_records_csv(path: str | Path) -> list[EvaluationRecord]:
    records = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            records.append(EvaluationRecord(
                tree_id=row["tree_id"], dataset_id=row["dataset_id"],
                predictor=row["predictor"], e=int(row["e"]), ep=float(row["Ep"]),
                fold=int(row["fold"]), mad=float(row["mad"]),
                mae_p=float(row["mae_p"]), mae_o=float(row["mae_o"]),
                n_test_users=int(row["n_test_users"]), seed=int(row["seed"])))
    return records


def write_aggregate_csv(path: str | Path, rows: Sequence[AggregateRow]) -> None:
    ordered = sorted(rows, key=lambda r: (r.mode, r.predictor, r.ep))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(AGGREGATE_CSV_COLUMNS)
        for r in ordered:
            writer.writerow([r.predictor, repr(r.ep), r.mode, repr(r.mean_mad),
                             repr(r.std_mad), repr(r.mean_mae_p),
                             repr(r.mean_mae_o), r.cells])


def write_kfold_csv(path: str | Path, rows: Sequence[KfoldRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("tree_id", "dataset_id", "predictor", "e", "Ep",
                         "mean_mad", "std_mad", "mean_mae_p", "mean_mae_o", "n_folds"))
        for r in sorted(rows, key=lambda r: (r.tree_id, r.dataset_id, r.predictor, r.e)):
            writer.writerow([r.tree_id, r.dataset_id, r.predictor, r.e, repr(r.ep),
                             repr(r.mean_mad), repr(r.std_mad), repr(r.mean_mae_p),
                             repr(r.mean_mae_o), r.n_folds])
