"""Independent brute-force oracles for policy checks.

These deliberately avoid the production post-order Q propagation: the
recursive oracle computes each subtree's outcome top-down, and the profile
oracle enumerates every (proponent policy, opponent policy) pair and keeps
the ones where each mover's choice is optimal at every node given the
continuation. Both are only meaningful on tie-free utilities.
"""

from __future__ import annotations

import itertools

from biparty.tree import CHANCE, DECISION, LEAF, DialogueTree


class TieError(AssertionError):
    pass


def spe_leaf(tree: DialogueTree, u_p, u_o, delta: float = 1.0) -> str:
    """Leaf reached under optimal alternating play, computed recursively."""

    def outcome(node_id: str) -> tuple[str, float, float]:
        node = tree.node(node_id)
        if node.kind == LEAF:
            return node_id, float(u_p[node_id]), float(u_o[node_id])
        results = [outcome(c) for c in node.children]
        own = 1 if node.kind == DECISION else 2
        scores = [r[own] for r in results]
        top = max(scores)
        if sum(1 for s in scores if s == top) > 1:
            raise TieError(f"tie at {node_id}")
        chosen = results[scores.index(top)]
        return chosen[0], delta * chosen[1], delta * chosen[2]

    return outcome(tree.root_id)[0]


def _play(tree: DialogueTree, profile: dict[str, str], start: str) -> str:
    node_id = start
    while tree.node(node_id).kind != LEAF:
        node_id = profile[node_id]
    return node_id


def spe_leaves_by_enumeration(tree: DialogueTree, u_p, u_o,
                              delta: float = 1.0) -> set[str]:
    """Play leaves of all strategy profiles that are optimal at every node.

    Exponential; only for small trees. With tie-free utilities the result is
    a single leaf.
    """
    decision_nodes = [n for n in tree.internal_ids()
                      if tree.node(n).kind == DECISION]
    chance_nodes = [n for n in tree.internal_ids() if tree.node(n).kind == CHANCE]
    movers = decision_nodes + chance_nodes
    options = [tree.children(n) for n in movers]
    leaves = set()
    for combo in itertools.product(*options):
        profile = dict(zip(movers, combo))
        ok = True
        for node_id in movers:
            util = u_p if tree.node(node_id).kind == DECISION else u_o
            # delta scales every alternative equally at a uniform-depth node
            mine = util[_play(tree, profile, profile[node_id])]
            for alt in tree.children(node_id):
                if util[_play(tree, profile, alt)] > mine:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            leaves.add(_play(tree, profile, tree.root_id))
    return leaves
