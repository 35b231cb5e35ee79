"""Dialogue decision trees.

A dialogue tree represents every possible persuasion dialogue between the
system (proponent) and a user (opponent). Internal nodes strictly alternate
by depth: the root and all even depths are decision nodes where the system
picks the next argument, odd depths are chance nodes where the user picks a
counterargument. Every arc carries the argument text posited by the moving
agent, and every leaf sits at the same depth (the tree height, counted in
arcs).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Mapping

DECISION = "decision"
CHANCE = "chance"
LEAF = "leaf"

_KINDS = (DECISION, CHANCE, LEAF)

TREE_FORMAT_KEYS = ("height", "root", "nodes")


class TreeError(ValueError):
    """Raised for malformed trees or illegal node operations."""


@dataclass(frozen=True)
class Node:
    """A single tree node; ``arc_label`` is the argument on the arc from its parent."""

    id: str
    kind: str
    children: tuple[str, ...] = ()
    arc_label: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise TreeError(f"unknown node kind {self.kind!r} for node {self.id!r}")


class DialogueTree:
    """Immutable dialogue tree with a canonical left-to-right leaf order."""

    def __init__(self, nodes: Iterable[Node], root_id: str, height: int) -> None:
        self._nodes: dict[str, Node] = {}
        for node in nodes:
            if node.id in self._nodes:
                raise TreeError(f"duplicate node id {node.id!r}")
            self._nodes[node.id] = node
        if root_id not in self._nodes:
            raise TreeError(f"root id {root_id!r} is not a node")
        self.root_id = root_id
        self.height = int(height)
        self._parent: dict[str, str] = {}
        self._depth: dict[str, int] = {}
        self._index_reachable()
        self._leaves: tuple[str, ...] = tuple(self._iter_leaves_preorder())

    def _index_reachable(self) -> None:
        # BFS from the root; tolerates broken graphs so validate_tree can report.
        queue = [(self.root_id, 0)]
        seen = {self.root_id}
        while queue:
            node_id, depth = queue.pop(0)
            self._depth[node_id] = depth
            for child_id in self._nodes[node_id].children:
                if child_id not in self._nodes or child_id in seen:
                    continue
                seen.add(child_id)
                self._parent[child_id] = node_id
                queue.append((child_id, depth + 1))

    def _iter_leaves_preorder(self) -> Iterator[str]:
        stack = [self.root_id]
        seen = set()
        while stack:
            node_id = stack.pop()
            if node_id in seen or node_id not in self._nodes:
                continue
            seen.add(node_id)
            node = self._nodes[node_id]
            if node.kind == LEAF:
                yield node_id
            else:
                stack.extend(reversed(node.children))

    def __contains__(self, node_id: str) -> bool:
        return node_id in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, node_id: str) -> Node:
        try:
            return self._nodes[node_id]
        except KeyError:
            raise TreeError(f"unknown node id {node_id!r}") from None

    def children(self, node_id: str) -> tuple[str, ...]:
        return self.node(node_id).children

    def is_leaf(self, node_id: str) -> bool:
        return self.node(node_id).kind == LEAF

    def depth(self, node_id: str) -> int:
        self.node(node_id)
        if node_id not in self._depth:
            raise TreeError(f"node {node_id!r} is unreachable from the root")
        return self._depth[node_id]

    def parent(self, node_id: str) -> str | None:
        self.node(node_id)
        return self._parent.get(node_id)

    @property
    def leaves(self) -> tuple[str, ...]:
        """Leaf ids in canonical (document, left-to-right) order."""
        return self._leaves

    @property
    def node_ids(self) -> tuple[str, ...]:
        return tuple(self._nodes)

    def internal_ids(self) -> Iterator[str]:
        for node_id, node in self._nodes.items():
            if node.kind != LEAF:
                yield node_id

    def postorder(self) -> list[str]:
        """Reachable node ids, children before parents."""
        order: list[str] = []
        stack: list[tuple[str, bool]] = [(self.root_id, False)]
        seen = set()
        while stack:
            node_id, expanded = stack.pop()
            if expanded:
                order.append(node_id)
                continue
            if node_id in seen or node_id not in self._nodes:
                continue
            seen.add(node_id)
            stack.append((node_id, True))
            for child_id in reversed(self._nodes[node_id].children):
                stack.append((child_id, False))
        return order

    def to_dict(self, u_p: Mapping[str, float] | None = None,
                u_o: Mapping[str, float] | None = None) -> dict:
        nodes = []
        for node in self._nodes.values():
            entry: dict = {
                "id": node.id,
                "kind": node.kind,
                "children": list(node.children),
                "arc_label": node.arc_label,
            }
            if node.kind == LEAF:
                entry["u_p"] = None if u_p is None else u_p.get(node.id)
                entry["u_o"] = None if u_o is None else u_o.get(node.id)
            nodes.append(entry)
        return {"height": self.height, "root": self.root_id, "nodes": nodes}


@dataclass(frozen=True)
class UtilityAssignment:
    """Per-leaf utilities for both agents; each map covers exactly the leaf set."""

    proponent: Mapping[str, float]
    opponent: Mapping[str, float]

    @classmethod
    def from_vectors(cls, tree: DialogueTree, u_p: Iterable[float],
                     u_o: Iterable[float]) -> "UtilityAssignment":
        """Build from vectors ordered by the tree's canonical leaf order."""
        up = {leaf: float(v) for leaf, v in zip(tree.leaves, u_p, strict=True)}
        uo = {leaf: float(v) for leaf, v in zip(tree.leaves, u_o, strict=True)}
        return cls(proponent=up, opponent=uo)

    def check_covers(self, tree: DialogueTree) -> None:
        leaf_set = set(tree.leaves)
        for name, mapping in (("proponent", self.proponent), ("opponent", self.opponent)):
            if set(mapping) != leaf_set:
                raise TreeError(f"{name} utilities do not cover the leaf set exactly")


def validate_tree(tree: DialogueTree) -> list[str]:
    """Check every structural invariant; returns the list of violations (empty = valid)."""
    problems: list[str] = []
    root = tree.node(tree.root_id)
    if root.kind != DECISION:
        problems.append(f"root must be a decision node, got {root.kind!r}")
    if root.arc_label is not None:
        problems.append("root must not carry an arc label")

    child_refs: dict[str, list[str]] = {}
    for node_id in tree.node_ids:
        node = tree.node(node_id)
        if (node.kind == LEAF) != (len(node.children) == 0):
            problems.append(f"node {node_id}: kind/children mismatch "
                            f"(kind={node.kind}, {len(node.children)} children)")
        for child_id in node.children:
            if child_id not in tree:
                problems.append(f"node {node_id}: unknown child {child_id!r}")
            else:
                child_refs.setdefault(child_id, []).append(node_id)

    if tree.root_id in child_refs:
        problems.append("root appears as a child")
    for node_id in tree.node_ids:
        if node_id == tree.root_id:
            continue
        parents = child_refs.get(node_id, [])
        if len(parents) == 0:
            problems.append(f"node {node_id}: unreachable (no parent)")
        elif len(parents) > 1:
            problems.append(f"node {node_id}: multiple parents {parents}")

    # Depth-dependent checks only make sense on reachable nodes.
    for node_id in tree.node_ids:
        node = tree.node(node_id)
        try:
            depth = tree.depth(node_id)
        except TreeError:
            continue
        if node.kind == LEAF:
            if depth != tree.height:
                problems.append(f"leaf {node_id} at depth {depth}, expected {tree.height}")
        else:
            expected = DECISION if depth % 2 == 0 else CHANCE
            if node.kind != expected:
                problems.append(f"node {node_id} at depth {depth} should be "
                                f"{expected}, got {node.kind}")
            if depth >= tree.height:
                problems.append(f"internal node {node_id} at depth {depth} >= height")
    return problems


def tree_from_dict(data: Mapping) -> tuple[DialogueTree, dict[str, float] | None,
                                           dict[str, float] | None]:
    """Parse the JSON tree format; returns (tree, proponent utils, opponent utils)."""
    for key in TREE_FORMAT_KEYS:
        if key not in data:
            raise TreeError(f"tree file missing {key!r}")
    nodes = []
    u_p: dict[str, float] = {}
    u_o: dict[str, float] = {}
    for entry in data["nodes"]:
        node = Node(
            id=str(entry["id"]),
            kind=entry["kind"],
            children=tuple(entry.get("children") or ()),
            arc_label=entry.get("arc_label"),
        )
        if node.kind != LEAF and (entry.get("u_p") is not None or entry.get("u_o") is not None):
            raise TreeError(f"utilities on non-leaf node {node.id!r}")
        nodes.append(node)
        if entry.get("u_p") is not None:
            u_p[node.id] = float(entry["u_p"])
        if entry.get("u_o") is not None:
            u_o[node.id] = float(entry["u_o"])
    tree = DialogueTree(nodes, root_id=str(data["root"]), height=int(data["height"]))
    return tree, (u_p or None), (u_o or None)


def read_tree_json(path: str | Path) -> tuple[DialogueTree, dict[str, float] | None,
                                              dict[str, float] | None]:
    with open(path, "r", encoding="utf-8") as fh:
        return tree_from_dict(json.load(fh))


def write_tree_json(path: str | Path, tree: DialogueTree,
                    u_p: Mapping[str, float] | None = None,
                    u_o: Mapping[str, float] | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(tree.to_dict(u_p=u_p, u_o=u_o), fh, indent=2, sort_keys=False)
        fh.write("\n")
