"""The red-meat case study: a concrete labeled dialogue tree, topic-based
proponent utilities, and a profile-based synthetic population with
demographics as free evidence.

The shipped bundle (tree.json, profiles.csv, topics.json) is a re-authored
reconstruction: 23 outcome leaves at dialogue depth 4, five topics carrying
the proponent utilities {8, 6, 4, 3, 2}, and six user profiles with ordinal
demographic encodings documented in the data files themselves.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .dataset import DEMO_PREFIX, LEAF_PREFIX, DatasetError, UtilityDataset
from .evaluation import CellRunner, EvaluationRecord, GridConfig, KfoldRow, aggregate_kfold
from .tree import DialogueTree, TreeError, read_tree_json, validate_tree

EXPECTED_LEAVES = 23
EXPECTED_HEIGHT = 4
TOPIC_UTILITIES = {
    "vegetarianism": 8.0,
    "fish-alternative": 6.0,
    "white-meat-alternative": 4.0,
    "thinking-alternatives": 3.0,
    "reduce-red-meat": 2.0,
}


def bundle_dir() -> Path:
    return Path(resources.files("biparty") / "data" / "casestudy")


def load_case_tree(path: str | Path | None = None,
                   topics_path: str | Path | None = None
                   ) -> tuple[DialogueTree, dict[str, float], dict[str, str]]:
    """Load and validate the case tree; returns (tree, proponent utils, leaf topics)."""
    base = bundle_dir()
    tree, u_p, _ = read_tree_json(path or base / "tree.json")
    with open(topics_path or base / "topics.json", "r", encoding="utf-8") as fh:
        topics_doc = json.load(fh)
    problems = validate_tree(tree)
    if problems:
        raise TreeError(f"case tree invalid: {problems}")
    if len(tree.leaves) != EXPECTED_LEAVES:
        raise TreeError(f"case tree has {len(tree.leaves)} leaves, "
                        f"expected {EXPECTED_LEAVES}")
    if tree.height != EXPECTED_HEIGHT:
        raise TreeError(f"case tree height {tree.height}, expected {EXPECTED_HEIGHT}")
    if u_p is None or set(u_p) != set(tree.leaves):
        raise TreeError("case tree must carry a proponent utility on every leaf")
    leaf_topics = topics_doc["leaf_topics"]
    topic_values = {t: float(v) for t, v in topics_doc["topic_utilities"].items()}
    if topic_values != TOPIC_UTILITIES:
        raise TreeError("unexpected topic utility table")
    for leaf in tree.leaves:
        topic = leaf_topics.get(leaf)
        if topic not in TOPIC_UTILITIES:
            raise TreeError(f"leaf {leaf} has unknown topic {topic!r}")
        if u_p[leaf] != TOPIC_UTILITIES[topic]:
            raise TreeError(f"leaf {leaf}: utility {u_p[leaf]} does not match "
                            f"topic {topic!r}")
    return tree, u_p, dict(leaf_topics)


def load_case_profiles(path: str | Path | None = None) -> tuple[UtilityDataset, list[str]]:
    """The six base profile rows; returns (dataset, profile names by row)."""
    src = path or bundle_dir() / "profiles.csv"
    with open(src, "r", encoding="utf-8", newline="") as fh:
        lines = [line for line in fh if not line.startswith("#")]
    reader = csv.reader(lines)
    header = next(reader)
    if header[0] != "profile":
        raise DatasetError("profiles file must start with a 'profile' column")
    demo_cols = [c[len(DEMO_PREFIX):] for c in header[1:] if c.startswith(DEMO_PREFIX)]
    leaf_cols = [c[len(LEAF_PREFIX):] for c in header[1:] if c.startswith(LEAF_PREFIX)]
    names, rows = [], []
    for line in reader:
        names.append(line[0])
        rows.append([float(v) for v in line[1:]])
    dataset = UtilityDataset(tuple(demo_cols), tuple(leaf_cols),
                             np.array(rows, dtype=float),
                             cluster_labels=np.arange(len(names)))
    return dataset, names


def gen_profile_dataset(profiles: UtilityDataset, size: int,
                        noise_variance: float = 1.0, rng_seed: int = 0,
                        noise_on_demographics: bool = True) -> UtilityDataset:
    """Tile the profile rows to ``size`` users, shuffle, and add Gaussian noise."""
    n_profiles = profiles.n_rows
    if size < n_profiles:
        raise DatasetError(f"size {size} below the number of profiles {n_profiles}")
    rng = np.random.default_rng(rng_seed)
    reps = int(np.ceil(size / n_profiles))
    rows = np.tile(profiles.rows, (reps, 1))[:size].astype(float)
    labels = np.tile(np.arange(n_profiles), reps)[:size]
    order = rng.permutation(size)
    rows, labels = rows[order], labels[order]
    noise = np.sqrt(noise_variance) * rng.standard_normal(rows.shape)
    if not noise_on_demographics:
        noise[:, : profiles.n_demo] = 0.0
    return UtilityDataset(profiles.demo_columns, profiles.leaf_columns,
                          rows + noise, cluster_labels=labels)


def _case_worker(args: tuple) -> list[EvaluationRecord]:
    runner_inputs, kind, questions = args
    runner = CellRunner(**runner_inputs)
    records = []
    for q in questions:
        for fold in range(runner.config.k_folds):
            records.append(runner.run_cell(kind, q, fold))
    return records


def run_case_eval(tree: DialogueTree, u_p: Mapping[str, float],
                  dataset: UtilityDataset, predictor_kinds: Sequence[str],
                  question_counts: Sequence[int], k_folds: int = 5,
                  master_seed: int = 0, workers: int = 1,
                  config: GridConfig | None = None
                  ) -> tuple[list[EvaluationRecord], list[KfoldRow]]:
    """Same cell protocol as the grid, on the single case (tree, dataset) pair.

    The x-axis is the absolute question count; q = 0 means demographics-only
    evidence, which every predictor accepts because demographic columns are
    free. Returns per-cell records and their k-fold aggregation rows.
    """
    for q in question_counts:
        if not 0 <= q <= dataset.n_leaves - 1:
            raise DatasetError(f"question count {q} outside [0, {dataset.n_leaves - 1}]")
    if dataset.n_demo == 0 and min(question_counts) == 0:
        raise DatasetError("q=0 requires demographic columns")
    base = config or GridConfig()
    cfg_fields = base.to_dict()
    cfg_fields.update(k_folds=k_folds, master_seed=master_seed)
    cfg_fields["branching_weights"] = {
        int(k): v for k, v in cfg_fields["branching_weights"].items()}
    for key in ("heights", "proponent_values", "cluster_counts", "center_widths",
                "evidence_percentages", "predictors", "k_grid"):
        cfg_fields[key] = tuple(cfg_fields[key])
    cfg = GridConfig(**cfg_fields)
    runner_inputs = dict(tree_id="case", dataset_id="profiles", tree=tree,
                         u_p=dict(u_p), dataset=dataset, config=cfg)
    tasks = [(runner_inputs, kind, list(question_counts))
             for kind in predictor_kinds]
    records: list[EvaluationRecord] = []
    if workers <= 1:
        for task in tasks:
            records.extend(_case_worker(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_case_worker, tasks):
                records.extend(result)
    records.sort(key=lambda r: r.key)
    return records, aggregate_kfold(records, expected_folds=k_folds)
