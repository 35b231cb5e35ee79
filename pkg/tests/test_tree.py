import json

import pytest

from biparty.tree import (DialogueTree, Node, TreeError, UtilityAssignment,
                          read_tree_json, tree_from_dict, validate_tree,
                          write_tree_json)

from conftest import MEAT_U_P, build_meat_tree


def test_meat_tree_is_valid():
    assert validate_tree(build_meat_tree()) == []


def test_leaves_in_document_order():
    tree = build_meat_tree()
    assert tree.leaves == ("n5", "n6", "n7", "n8")


def test_single_node_tree_invalid():
    tree = DialogueTree([Node("r", "leaf", ())], root_id="r", height=0)
    problems = validate_tree(tree)
    assert any("root must be a decision" in p for p in problems)


def test_nonuniform_leaf_depth_invalid():
    nodes = [
        Node("r", "decision", ("a", "b")),
        Node("a", "leaf", (), "x"),
        Node("b", "chance", ("c",), "y"),
        Node("c", "leaf", (), "z"),
    ]
    tree = DialogueTree(nodes, root_id="r", height=2)
    problems = validate_tree(tree)
    assert any("leaf a at depth 1" in p for p in problems)


def test_alternation_violation_detected():
    nodes = [
        Node("r", "decision", ("a",)),
        Node("a", "decision", ("b",), "x"),
        Node("b", "leaf", (), "y"),
    ]
    problems = validate_tree(DialogueTree(nodes, root_id="r", height=2))
    assert any("should be chance" in p for p in problems)


def test_multiple_parents_detected():
    nodes = [
        Node("r", "decision", ("a", "b")),
        Node("a", "chance", ("c",), "x"),
        Node("b", "chance", ("c",), "y"),
        Node("c", "leaf", (), "z"),
    ]
    problems = validate_tree(DialogueTree(nodes, root_id="r", height=2))
    assert any("multiple parents" in p for p in problems)


def test_duplicate_ids_rejected():
    with pytest.raises(TreeError, match="duplicate"):
        DialogueTree([Node("r", "decision", ("a",)), Node("a", "leaf", (), "x"),
                      Node("a", "leaf", (), "y")], root_id="r", height=1)


def test_depth_and_parent():
    tree = build_meat_tree()
    assert tree.depth("n7") == 3
    assert tree.parent("n7") == "n4"
    assert tree.parent("n1") is None


def test_utility_assignment_coverage():
    tree = build_meat_tree()
    utils = UtilityAssignment(proponent=dict(MEAT_U_P), opponent={"n5": 1.0})
    with pytest.raises(TreeError, match="opponent"):
        utils.check_covers(tree)


def test_json_round_trip(tmp_path):
    tree = build_meat_tree()
    path = tmp_path / "tree.json"
    write_tree_json(path, tree, u_p=MEAT_U_P)
    loaded, u_p, u_o = read_tree_json(path)
    assert loaded.leaves == tree.leaves
    assert loaded.height == 3
    assert u_p == MEAT_U_P
    assert u_o is None
    assert loaded.node("n4").arc_label == "I really like the taste of meat."


def test_json_rejects_missing_keys():
    with pytest.raises(TreeError, match="height"):
        tree_from_dict({"root": "r", "nodes": []})


def test_json_rejects_utilities_on_internal_nodes():
    data = {
        "height": 1,
        "root": "r",
        "nodes": [
            {"id": "r", "kind": "decision", "children": ["a"], "arc_label": None,
             "u_p": 3.0},
            {"id": "a", "kind": "leaf", "children": [], "arc_label": "x"},
        ],
    }
    with pytest.raises(TreeError, match="non-leaf"):
        tree_from_dict(data)


def test_to_dict_includes_leaf_utilities():
    tree = build_meat_tree()
    data = tree.to_dict(u_p=MEAT_U_P)
    by_id = {n["id"]: n for n in data["nodes"]}
    assert by_id["n8"]["u_p"] == 6.0
    assert "u_p" not in by_id["n2"]
    json.dumps(data)  # serializable
