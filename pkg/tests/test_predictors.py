import json

import numpy as np
import pytest
from sklearn.ensemble import RandomForestClassifier
from sklearn.svm import SVR

from biparty.dataset import UtilityDataset
from biparty.predictors import (DEFAULT_K_GRID, KIND_CLUMER, KIND_MEANR,
                                KIND_RANDR, CramerPredictor, OraclePredictor,
                                PredictorError, SvrEaiPredictor, ask_plan,
                                fit_baseline, fit_cramer, fit_eai_svr,
                                load_predictor_json, predict_utilities,
                                predictor_from_dict, predictor_to_dict,
                                save_predictor_json)
from biparty.predictors import _ForestPack, _RbfSvrPack
from biparty.synth import ClusterSpec, gen_cluster_dataset


def two_cluster_dataset(n=200, dims=6, var=0.01, cw=3.0, seed=0):
    return gen_cluster_dataset(ClusterSpec(2, cw, var, n, dims=dims, rng_seed=seed))


def worked_example_dataset(per_cluster=20, spread=0.0):
    """Three clusters whose per-column means are exactly the worked-example
    centroids; ``spread`` adds column-demeaned noise so the means stay exact."""
    centroids = np.array([
        [5.0, 4.0, 9.2, 9.1],
        [3.1, 8.5, 7.2, 1.9],
        [8.1, 8.6, 2.7, 7.3],
    ])
    rng = np.random.default_rng(42)
    blocks = []
    for c in centroids:
        noise = spread * rng.standard_normal((per_cluster, 4))
        blocks.append(c + noise - noise.mean(axis=0))
    rows = np.concatenate(blocks, axis=0)
    labels = np.repeat(np.arange(3), per_cluster)
    order = rng.permutation(len(rows))
    return UtilityDataset((), ("n5", "n6", "n7", "n8"), rows[order], labels[order])


# --- SVR-EAI ----------------------------------------------------------------

def test_svr_constant_target_within_epsilon():
    rows = np.hstack([np.random.default_rng(0).normal(size=(50, 2)),
                      np.full((50, 1), 7.0)])
    ds = UtilityDataset((), ("a", "b", "c"), rows)
    p = fit_eai_svr(ds, 2)
    for i in range(10):
        out = p.predict({"a": rows[i, 0], "b": rows[i, 1]})
        assert abs(out[2] - 7.0) <= 0.1 + 1e-9


def test_svr_learns_separated_clusters():
    ds = two_cluster_dataset()
    test = ds.subset(np.arange(150, 200))
    train = ds.subset(np.arange(150))
    e = ds.n_leaves // 2
    p = fit_eai_svr(train, e)
    predicted = p.predict_matrix(test)
    # nearest-center oracle from the ground-truth labels
    centers = np.stack([train.leaf_matrix[train.cluster_labels == c].mean(axis=0)
                        for c in (0, 1)])
    oracle = centers[test.cluster_labels]
    err = np.abs(predicted[:, e:] - oracle[:, e:])
    assert err.max() < 0.2


def test_svr_evidence_out_of_range():
    ds = two_cluster_dataset(n=40)
    with pytest.raises(PredictorError):
        fit_eai_svr(ds, ds.n_leaves)
    with pytest.raises(PredictorError):
        fit_eai_svr(ds, 0)  # no demographics -> e=0 illegal
    with pytest.raises(PredictorError):
        fit_eai_svr(ds.subset(np.arange(0)), 2)


def test_svr_pack_matches_sklearn():
    ds = two_cluster_dataset(n=120, var=1.0)
    X = ds.leaf_matrix[:, :3]
    y = ds.leaf_matrix[:, 3]
    svr = SVR(kernel="rbf", C=1.0, epsilon=0.1, gamma="scale").fit(X, y)
    gamma = 1.0 / (3 * X.var())
    pack = _RbfSvrPack.from_sklearn(svr, gamma)
    new = np.random.default_rng(1).normal(size=(20, 3))
    assert np.allclose(pack.predict(new), svr.predict(new), atol=1e-9)


# --- CRAMER -----------------------------------------------------------------

def test_cramer_worked_example_asked_set():
    ds = worked_example_dataset()
    p = fit_cramer(ds, 2, k_grid=(2, 3, 4), cluster_seed=0, forest_seed=0)
    assert p.evidence.columns == ("n7", "n8")
    plan = ask_plan(p)
    assert [q.column for q in plan] == ["n7", "n8"]


def test_cramer_worked_example_prediction():
    ds = worked_example_dataset(per_cluster=40, spread=0.8)
    p = fit_cramer(ds, 2, k_grid=(2, 3, 4), cluster_seed=0, forest_seed=0)
    assert p.evidence.columns == ("n7", "n8")
    out = predict_utilities(p, {"n7": 8.0, "n8": 7.0})
    assert out == pytest.approx([5.0, 4.0, 8.0, 7.0], abs=1e-9)


def test_cramer_recovers_zero_variance_generator():
    ds = gen_cluster_dataset(ClusterSpec(4, 3.0, 1e-12, 120, dims=6, rng_seed=3))
    p = fit_cramer(ds, 2, k_grid=(2, 3, 4, 6), cluster_seed=1, forest_seed=1)
    rng = np.random.default_rng(3)
    centers = rng.uniform(-3.0, 3.0, size=(4, 6))
    dist = np.abs(p.centroids[:, None, :] - centers[None, :, :]).sum(axis=2)
    assert p.centroids.shape == (4, 6)
    assert dist.min(axis=0).max() < 1e-5
    # held-out rows classify back to their own cluster exactly
    predicted = p.predict_matrix(ds)
    assert np.abs(predicted - ds.leaf_matrix).max() < 1e-5


def test_cramer_question_budget():
    ds = two_cluster_dataset(n=100, dims=8, var=1.0)
    for e in (1, 2, 5):
        p = fit_cramer(ds, e, k_grid=(2, 3), cluster_seed=0, forest_seed=0)
        asked_leaves = [c for c in p.evidence.columns if c in ds.leaf_columns]
        assert len(asked_leaves) <= e


def test_cramer_forest_defaults():
    p = CramerPredictor(2)
    assert p.n_trees == 100
    assert p.min_split == 2
    assert p.min_leaf == 1


def test_cramer_rejects_full_evidence():
    ds = two_cluster_dataset(n=60)
    with pytest.raises(PredictorError):
        fit_cramer(ds, ds.n_leaves, k_grid=(2,))


def test_forest_pack_matches_sklearn():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(150, 4))
    y = (X[:, 0] + X[:, 2] > 0).astype(int) + (X[:, 1] > 0.5).astype(int)
    forest = RandomForestClassifier(n_estimators=30, max_depth=3,
                                    random_state=0).fit(X, y)
    pack = _ForestPack.from_sklearn(forest)
    new = rng.normal(size=(60, 4))
    assert np.array_equal(pack.predict(new), forest.predict(new))
    assert np.allclose(pack.predict_proba(new), forest.predict_proba(new), atol=1e-12)


# --- Baselines ----------------------------------------------------------------

def test_meanr_constant_column():
    rows = np.hstack([np.random.default_rng(0).normal(size=(30, 2)),
                      np.full((30, 1), 4.2)])
    ds = UtilityDataset((), ("a", "b", "c"), rows)
    p = fit_baseline(ds, 2, KIND_MEANR)
    out = p.predict({"a": 0.0, "b": 0.0})
    assert out[2] == pytest.approx(4.2)


def test_randr_bounds_and_frequencies():
    rows = np.hstack([np.zeros((40, 1)),
                      np.linspace(2.0, 6.0, 40).reshape(-1, 1)])
    ds = UtilityDataset((), ("a", "b"), rows)
    p = fit_baseline(ds, 1, KIND_RANDR, seed=9)
    draws = np.array([p.predict({"a": 0.0}, draw_seed=i)[1] for i in range(10_000)])
    assert set(np.unique(draws)) <= {2.0, 3.0, 4.0, 5.0, 6.0}
    for v in (2, 3, 4, 5, 6):
        assert abs((draws == v).mean() - 0.2) < 0.02


def test_randr_deterministic_per_draw_seed():
    ds = two_cluster_dataset(n=50)
    p = fit_baseline(ds, 2, KIND_RANDR, seed=4)
    answers = {"c0": 1.0, "c1": 2.0}
    assert np.array_equal(p.predict(answers, draw_seed=77),
                          p.predict(answers, draw_seed=77))


def test_clumer_zero_variance_split():
    # two clusters separable on the first coordinate
    centroids = np.array([[1.0, 5.0, 6.0], [9.0, 2.0, 3.0]])
    rows = np.repeat(centroids, 15, axis=0)
    ds = UtilityDataset((), ("a", "b", "c"), rows,
                        cluster_labels=np.repeat([0, 1], 15))
    p = fit_baseline(ds, 1, KIND_CLUMER, seed=0, k_grid=(2, 3))
    out_low = p.predict({"a": 1.1})
    out_high = p.predict({"a": 8.8})
    assert out_low[1:] == pytest.approx([5.0, 6.0])
    assert out_high[1:] == pytest.approx([2.0, 3.0])


def test_unknown_baseline_kind():
    ds = two_cluster_dataset(n=30)
    with pytest.raises(PredictorError):
        fit_baseline(ds, 1, "nope")


# --- Shared contract ----------------------------------------------------------

@pytest.mark.parametrize("kind", ["svr", "cramer", "meanr", "randr", "clumer"])
def test_evidence_passthrough(kind):
    ds = two_cluster_dataset(n=80, var=1.0)
    e = 3
    if kind == "svr":
        p = fit_eai_svr(ds, e)
    elif kind == "cramer":
        p = fit_cramer(ds, e, k_grid=(2, 3), cluster_seed=0, forest_seed=0)
    else:
        p = fit_baseline(ds, e, kind if kind != "clumer" else KIND_CLUMER,
                         seed=1, k_grid=(2, 3))
    answers = {c: float(v) for c, v in
               zip(p.evidence.columns, np.random.default_rng(0).normal(size=10))}
    out = p.predict(answers, draw_seed=0)
    assert out.shape == (ds.n_leaves,)
    pos = {c: i for i, c in enumerate(ds.leaf_columns)}
    for c, v in answers.items():
        assert out[pos[c]] == v


def test_answer_mismatch_errors():
    ds = two_cluster_dataset(n=40)
    p = fit_eai_svr(ds, 2)
    with pytest.raises(PredictorError, match="missing"):
        p.predict({"c0": 1.0})
    with pytest.raises(PredictorError, match="extra"):
        p.predict({"c0": 1.0, "c1": 2.0, "c5": 0.0})


def test_unfitted_predictor_rejects_predict():
    with pytest.raises(PredictorError, match="not fitted"):
        SvrEaiPredictor(1).predict({})


def test_predict_matrix_agrees_with_predict():
    ds = two_cluster_dataset(n=90, var=1.0)
    test = ds.subset(np.arange(70, 90))
    train = ds.subset(np.arange(70))
    predictors = [
        fit_eai_svr(train, 2),
        fit_cramer(train, 2, k_grid=(2, 3), cluster_seed=0, forest_seed=0),
        fit_baseline(train, 2, KIND_MEANR),
        fit_baseline(train, 2, KIND_RANDR, seed=5),
        fit_baseline(train, 2, KIND_CLUMER, seed=5, k_grid=(2, 3)),
    ]
    draw_seeds = np.arange(20) + 100
    for p in predictors:
        batch = p.predict_matrix(test, draw_seeds=draw_seeds)
        for j in range(20):
            answers = test.row_answers(j, p.evidence.columns)
            single = p.predict(answers, draw_seed=int(draw_seeds[j]))
            assert np.allclose(batch[j], single, atol=1e-12), p.kind


def test_oracle_predictor_echoes_truth():
    ds = two_cluster_dataset(n=30)
    p = OraclePredictor().fit(ds)
    out = p.predict_matrix(ds)
    assert np.array_equal(out, ds.leaf_matrix)


def test_ask_plan_prefix_and_demo_order():
    rows = np.hstack([np.random.default_rng(0).normal(size=(40, 2)),
                      np.random.default_rng(1).normal(size=(40, 5))])
    ds = UtilityDataset(("age", "sex"), tuple("abcde"), rows)
    p = fit_eai_svr(ds, 3)
    plan = ask_plan(p, prompts={"a": "Rate argument A"})
    assert [q.column for q in plan] == ["age", "sex", "a", "b", "c"]
    assert plan[0].is_demographic and not plan[2].is_demographic
    assert plan[2].prompt == "Rate argument A"


def test_ask_plan_demographics_only():
    rows = np.hstack([np.random.default_rng(0).normal(size=(60, 2)),
                      np.random.default_rng(1).normal(size=(60, 4))])
    ds = UtilityDataset(("age", "activity"), tuple("abcd"), rows,
                        cluster_labels=np.repeat([0, 1], 30))
    p = fit_cramer(ds, 0, k_grid=(2, 3), cluster_seed=0, forest_seed=0)
    assert [q.column for q in ask_plan(p)] == ["age", "activity"]


def test_e_zero_without_demographics_rejected():
    ds = two_cluster_dataset(n=30)
    with pytest.raises(PredictorError, match="demographic"):
        fit_baseline(ds, 0, KIND_MEANR)


# --- Serialization ------------------------------------------------------------

@pytest.mark.parametrize("kind", ["svr", "cramer", "meanr", "randr", "clumer"])
def test_json_round_trip_identical_predictions(tmp_path, kind):
    ds = two_cluster_dataset(n=80, var=1.0)
    e = 2
    if kind == "svr":
        p = fit_eai_svr(ds, e)
    elif kind == "cramer":
        p = fit_cramer(ds, e, k_grid=(2, 3), cluster_seed=0, forest_seed=0)
    else:
        p = fit_baseline(ds, e, kind if kind != "clumer" else KIND_CLUMER,
                         seed=1, k_grid=(2, 3))
    path = tmp_path / "p.json"
    save_predictor_json(path, p)
    loaded = load_predictor_json(path)
    assert loaded.kind == p.kind
    assert loaded.evidence == p.evidence
    test = two_cluster_dataset(n=15, var=1.0, seed=9)
    a = p.predict_matrix(test, draw_seeds=np.arange(15))
    b = loaded.predict_matrix(test, draw_seeds=np.arange(15))
    assert np.array_equal(a, b)


def test_serialized_format_versioned():
    ds = two_cluster_dataset(n=30)
    doc = predictor_to_dict(fit_baseline(ds, 1, KIND_MEANR))
    assert doc["format_version"] == 1
    json.dumps(doc)
    doc["format_version"] = 99
    with pytest.raises(PredictorError, match="format_version"):
        predictor_from_dict(doc)
