import numpy as np
import pytest

from biparty.dataset import read_dataset_csv, write_dataset_csv
from biparty.synth import (ClusterSpec, SpecError, TreeGenSpec,
                           gen_cluster_dataset, gen_proponent_utilities,
                           gen_tree)
from biparty.tree import validate_tree


def test_degenerate_weights_give_complete_binary_tree():
    tree = gen_tree(TreeGenSpec(height=3, branching_weights={2: 1.0}, rng_seed=0))
    assert len(tree.leaves) == 8
    assert validate_tree(tree) == []


def test_height_one_tree():
    tree = gen_tree(TreeGenSpec(height=1, branching_weights={3: 1.0}, rng_seed=0))
    assert tree.node(tree.root_id).kind == "decision"
    assert all(tree.is_leaf(c) for c in tree.children(tree.root_id))


def test_generated_trees_always_valid():
    weights = {2: 0.45, 3: 0.45, 4: 0.10}
    for seed in range(25):
        tree = gen_tree(TreeGenSpec(height=4, branching_weights=weights, rng_seed=seed))
        assert validate_tree(tree) == []
        assert 16 <= len(tree.leaves) <= 256


def test_branching_frequencies_match_weights():
    weights = {2: 0.45, 3: 0.45, 4: 0.10}
    counts = {2: 0, 3: 0, 4: 0}
    for seed in range(400):
        tree = gen_tree(TreeGenSpec(height=4, branching_weights=weights, rng_seed=seed))
        for node_id in tree.internal_ids():
            counts[len(tree.children(node_id))] += 1
    total = sum(counts.values())
    assert total > 10_000
    for b, w in weights.items():
        assert abs(counts[b] / total - w) < 0.01


def test_tree_generation_deterministic():
    spec = TreeGenSpec(height=4, branching_weights={2: 0.5, 3: 0.5}, rng_seed=99)
    a, b = gen_tree(spec), gen_tree(spec)
    assert a.to_dict() == b.to_dict()


def test_tree_spec_validation():
    with pytest.raises(SpecError):
        TreeGenSpec(height=0, branching_weights={2: 1.0})
    with pytest.raises(SpecError):
        TreeGenSpec(height=2, branching_weights={})
    with pytest.raises(SpecError):
        TreeGenSpec(height=2, branching_weights={0: 1.0})
    with pytest.raises(SpecError):
        TreeGenSpec(height=2, branching_weights={2: 0.4, 3: 0.4})


def test_proponent_singleton_value():
    tree = gen_tree(TreeGenSpec(height=2, branching_weights={2: 1.0}, rng_seed=1))
    utils = gen_proponent_utilities(tree, [5], rng_seed=0)
    assert set(utils.values()) == {5.0}
    assert set(utils) == set(tree.leaves)


def test_proponent_values_roughly_uniform():
    tree = gen_tree(TreeGenSpec(height=13, branching_weights={2: 1.0}, rng_seed=1))
    assert len(tree.leaves) == 8192
    utils = gen_proponent_utilities(tree, range(1, 12), rng_seed=3)
    values = np.array(list(utils.values()))
    for v in range(1, 12):
        assert abs((values == v).mean() - 1 / 11) < 0.012


def test_proponent_empty_value_set_rejected():
    tree = gen_tree(TreeGenSpec(height=2, branching_weights={2: 1.0}, rng_seed=1))
    with pytest.raises(SpecError):
        gen_proponent_utilities(tree, [], rng_seed=0)


def test_cluster_zero_variance_limit():
    spec = ClusterSpec(num_clusters=3, center_width=2.0, cluster_variance=1e-12,
                       dataset_size=30, dims=5, rng_seed=4)
    ds = gen_cluster_dataset(spec)
    centers = {}
    for label in (0, 1, 2):
        rows = ds.rows[ds.cluster_labels == label]
        centers[label] = rows[0]
        assert np.abs(rows - rows[0]).max() < 1e-5


def test_cluster_sizes_balanced():
    ds = gen_cluster_dataset(ClusterSpec(4, 3.0, 1.0, 2000, dims=6, rng_seed=0))
    assert sorted(np.bincount(ds.cluster_labels)) == [500, 500, 500, 500]
    ds = gen_cluster_dataset(ClusterSpec(3, 3.0, 1.0, 200, dims=6, rng_seed=0))
    assert sorted(np.bincount(ds.cluster_labels)) == [66, 67, 67]


def test_cluster_moments_match_generator():
    spec = ClusterSpec(num_clusters=2, center_width=3.0, cluster_variance=1.0,
                       dataset_size=10_000, dims=10, rng_seed=8)
    ds = gen_cluster_dataset(spec)
    rng = np.random.default_rng(8)
    centers = rng.uniform(-3.0, 3.0, size=(2, 10))
    for label in (0, 1):
        rows = ds.rows[ds.cluster_labels == label]
        assert np.abs(rows.mean(axis=0) - centers[label]).max() < 0.05
        assert np.abs(rows.var(axis=0, ddof=1) - 1.0).max() < 0.05


def test_cluster_dataset_deterministic():
    spec = ClusterSpec(4, 1.0, 1.0, 100, dims=4, rng_seed=21)
    a, b = gen_cluster_dataset(spec), gen_cluster_dataset(spec)
    assert np.array_equal(a.rows, b.rows)
    assert np.array_equal(a.cluster_labels, b.cluster_labels)


def test_cluster_spec_validation():
    with pytest.raises(SpecError):
        ClusterSpec(0, 1.0, 1.0, 10, dims=2)
    with pytest.raises(SpecError):
        ClusterSpec(2, -1.0, 1.0, 10, dims=2)
    with pytest.raises(SpecError):
        ClusterSpec(2, 1.0, 0.0, 10, dims=2)
    with pytest.raises(SpecError):
        ClusterSpec(12, 1.0, 1.0, 10, dims=2)


def test_dataset_csv_round_trip(tmp_path):
    ds = gen_cluster_dataset(ClusterSpec(2, 1.0, 1.0, 20, dims=3, rng_seed=5),
                             leaf_ids=["n5", "n6", "n7"])
    path = tmp_path / "data.csv"
    write_dataset_csv(path, ds)
    loaded = read_dataset_csv(path)
    assert loaded.leaf_columns == ("n5", "n6", "n7")
    assert np.array_equal(loaded.rows, ds.rows)
    assert np.array_equal(loaded.cluster_labels, ds.cluster_labels)
    header = path.read_text().splitlines()[0]
    assert header == "leaf:n5,leaf:n6,leaf:n7,cluster"
