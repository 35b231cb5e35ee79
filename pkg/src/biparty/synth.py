"""Random generation of dialogue trees and clustered opponent-utility datasets.

Trees are built breadth-first: every internal node draws its child count from
a branching-factor distribution, kinds alternate from a decision root, and all
leaves end up at the requested height. Datasets model subpopulations: cluster
centers are sampled uniformly in a box and each user's utility vector is an
isotropic Gaussian draw around their cluster's center.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .dataset import UtilityDataset
from .tree import CHANCE, DECISION, LEAF, DialogueTree, Node


class SpecError(ValueError):
    """Raised for invalid generator specifications."""


@dataclass(frozen=True)
class TreeGenSpec:
    """Parameters for random tree generation."""

    height: int
    branching_weights: Mapping[int, float]
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.height < 1:
            raise SpecError(f"height must be >= 1, got {self.height}")
        if not self.branching_weights:
            raise SpecError("branching_weights must be non-empty")
        if any(int(b) < 1 for b in self.branching_weights):
            raise SpecError("branching factors must be >= 1")
        total = float(sum(self.branching_weights.values()))
        if abs(total - 1.0) > 1e-9:
            raise SpecError(f"branching probabilities sum to {total}, expected 1")


@dataclass(frozen=True)
class ClusterSpec:
    """Parameters for Gaussian-cluster dataset generation."""

    num_clusters: int
    center_width: float
    cluster_variance: float
    dataset_size: int
    dims: int
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.num_clusters < 1:
            raise SpecError("num_clusters must be >= 1")
        if self.center_width <= 0:
            raise SpecError("center_width must be > 0")
        if self.cluster_variance <= 0:
            raise SpecError("cluster_variance must be > 0")
        if self.dataset_size < self.num_clusters:
            raise SpecError("dataset_size must be >= num_clusters")
        if self.dims < 1:
            raise SpecError("dims must be >= 1")


def gen_tree(spec: TreeGenSpec) -> DialogueTree:
    """Generate a random uniform-depth tree, deterministic per seed."""
    rng = np.random.default_rng(spec.rng_seed)
    factors = sorted(int(b) for b in spec.branching_weights)
    probs = np.array([spec.branching_weights[b] for b in factors], dtype=float)
    probs = probs / probs.sum()

    counter = 1
    root_id = f"n{counter}"
    frontier = [root_id]
    children_of: dict[str, list[str]] = {root_id: []}
    for depth in range(spec.height):
        next_frontier = []
        for node_id in frontier:
            branching = int(rng.choice(factors, p=probs))
            for _ in range(branching):
                counter += 1
                child_id = f"n{counter}"
                children_of[node_id].append(child_id)
                children_of[child_id] = []
                next_frontier.append(child_id)
        frontier = next_frontier

    nodes: list[Node] = []
    queue = [(root_id, 0)]
    while queue:
        node_id, depth = queue.pop(0)
        kids = tuple(children_of[node_id])
        kind = LEAF if not kids else (DECISION if depth % 2 == 0 else CHANCE)
        label = None if node_id == root_id else f"argument {node_id}"
        nodes.append(Node(id=node_id, kind=kind, children=kids, arc_label=label))
        queue.extend((c, depth + 1) for c in kids)
    return DialogueTree(nodes, root_id=root_id, height=spec.height)


def gen_proponent_utilities(tree: DialogueTree, value_set: Sequence[float],
                            rng_seed: int = 0) -> dict[str, float]:
    """Assign each leaf an independent uniform draw from ``value_set``."""
    values = sorted(set(float(v) for v in value_set))
    if not values:
        raise SpecError("value_set must be non-empty")
    rng = np.random.default_rng(rng_seed)
    draws = rng.choice(values, size=len(tree.leaves))
    return {leaf: float(v) for leaf, v in zip(tree.leaves, draws)}


def gen_cluster_dataset(spec: ClusterSpec,
                        leaf_ids: Sequence[str] | None = None) -> UtilityDataset:
    """Sample a balanced Gaussian-cluster dataset of opponent utility vectors."""
    if leaf_ids is not None and len(leaf_ids) != spec.dims:
        raise SpecError(f"{len(leaf_ids)} leaf ids for dims={spec.dims}")
    rng = np.random.default_rng(spec.rng_seed)
    centers = rng.uniform(-spec.center_width, spec.center_width,
                          size=(spec.num_clusters, spec.dims))
    base, extra = divmod(spec.dataset_size, spec.num_clusters)
    sigma = float(np.sqrt(spec.cluster_variance))
    blocks, labels = [], []
    for c in range(spec.num_clusters):
        size = base + (1 if c < extra else 0)
        blocks.append(centers[c] + sigma * rng.standard_normal((size, spec.dims)))
        labels.append(np.full(size, c))
    rows = np.concatenate(blocks, axis=0)
    label_arr = np.concatenate(labels)
    order = rng.permutation(spec.dataset_size)
    columns = tuple(leaf_ids) if leaf_ids is not None else \
        tuple(f"c{i}" for i in range(spec.dims))
    return UtilityDataset(demo_columns=(), leaf_columns=columns,
                          rows=rows[order], cluster_labels=label_arr[order])
