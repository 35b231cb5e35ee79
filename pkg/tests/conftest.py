import numpy as np
import pytest

from biparty.tree import DialogueTree, Node, UtilityAssignment


def build_meat_tree() -> DialogueTree:
    """The worked red-meat example: one opener, two user replies, four outcomes."""
    nodes = [
        Node("n1", "decision", ("n2",)),
        Node("n2", "chance", ("n3", "n4"),
             "Low red meat consumption is necessary for a healthy diet."),
        Node("n3", "decision", ("n5", "n6"), "It is really difficult to change diet."),
        Node("n4", "decision", ("n7", "n8"), "I really like the taste of meat."),
        Node("n5", "leaf", (), "Think about the benefits of reducing red meat."),
        Node("n6", "leaf", (), "Try to reduce red meat slowly."),
        Node("n7", "leaf", (), "White meat can be an alternative."),
        Node("n8", "leaf", (), "Fish is a tasty alternative to meat."),
    ]
    return DialogueTree(nodes, root_id="n1", height=3)


MEAT_U_P = {"n5": 2.0, "n6": 3.0, "n7": 4.0, "n8": 6.0}
MEAT_U_O = {"n5": 2.0, "n6": 6.0, "n7": 7.0, "n8": 4.0}


@pytest.fixture
def meat_tree() -> DialogueTree:
    return build_meat_tree()


@pytest.fixture
def meat_utils() -> UtilityAssignment:
    return UtilityAssignment(proponent=dict(MEAT_U_P), opponent=dict(MEAT_U_O))


def random_uniform_tree(rng: np.random.Generator, max_height: int = 4,
                        max_leaves: int = 64, min_branch: int = 1,
                        max_branch: int = 3) -> DialogueTree:
    """Random uniform-depth alternating tree within a leaf budget."""
    while True:
        height = int(rng.integers(1, max_height + 1))
        counter = 1
        children_of = {"n1": []}
        frontier = ["n1"]
        for depth in range(height):
            nxt = []
            for node_id in frontier:
                b = int(rng.integers(min_branch, max_branch + 1))
                for _ in range(b):
                    counter += 1
                    cid = f"n{counter}"
                    children_of[node_id].append(cid)
                    children_of[cid] = []
                    nxt.append(cid)
            frontier = nxt
        if len(frontier) <= max_leaves:
            break
    nodes = []
    depths = {"n1": 0}
    for node_id, kids in children_of.items():
        for c in kids:
            depths[c] = depths[node_id] + 1
    for node_id, kids in children_of.items():
        if not kids:
            kind = "leaf"
        else:
            kind = "decision" if depths[node_id] % 2 == 0 else "chance"
        label = None if node_id == "n1" else f"arg {node_id}"
        nodes.append(Node(node_id, kind, tuple(kids), label))
    return DialogueTree(nodes, root_id="n1", height=height)


def tie_free_utilities(tree: DialogueTree, rng: np.random.Generator) -> UtilityAssignment:
    """Distinct utility values per agent so no AMax set has ties."""
    n = len(tree.leaves)
    u_p = rng.permutation(n) + rng.uniform(0.1, 0.9)
    u_o = rng.permutation(n) + rng.uniform(0.1, 0.9)
    return UtilityAssignment.from_vectors(tree, u_p, u_o)
