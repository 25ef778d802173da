"""
Planted planar trees with leaves and corks.

A tree is a root edge carrying either a leaf (the bare tree `|`) or an inner
vertex; vertices hold an ordered tuple of children and an optional label.
Corks are vertices without children. Addresses are tuples of 0-based child
indices from the root vertex, leaves are numbered 1-based left to right.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Any, Callable, Dict, Iterator, List, Optional, Tuple

from src.errors import ArityError, ParseError
from src.utils import Logging

logger = Logging.get_console_logger()

TreeAddress = Tuple[int, ...]
LabelMerger = Callable[[Any, int, Any], Any]


### NODES ###


@dataclass(frozen=True, slots=True)
class Leaf:
    """
    Positional marker of an input; never a vertex.
    """

    def __str__(self) -> str:
        return "*"


LEAF = Leaf()


@dataclass(frozen=True, slots=True)
class Vertex:
    """
    Inner vertex; the label is None for unlabelled trees.
    """

    children: Tuple["Node", ...] = ()
    label: Any = None

    @property
    def arity(self) -> int:
        return len(self.children)

    @property
    def is_cork(self) -> bool:
        return not self.children

    def __str__(self) -> str:
        return node_to_text(self)


Node = Vertex | Leaf


@dataclass(frozen=True, slots=True)
class Tree:
    """
    Planted planar tree; `root` is LEAF for the bare tree.
    """

    root: Node = LEAF

    @property
    def is_bare(self) -> bool:
        return isinstance(self.root, Leaf)

    @property
    def leaf_count(self) -> int:
        return node_leaf_count(self.root)

    @property
    def arity(self) -> int:
        return self.leaf_count

    @property
    def inner_count(self) -> int:
        return node_inner_count(self.root)

    def __getitem__(self, address: TreeAddress) -> Node:
        node = self.root
        for index in address:
            if not isinstance(node, Vertex) or index >= node.arity:
                raise IndexError(f"No node at address {address}.")
            node = node.children[index]
        return node

    def vertices(self) -> Iterator[Tuple[TreeAddress, Vertex]]:
        """
        Inner vertices in preorder with their addresses.
        """
        yield from _walk_vertices(self.root, ())

    def __str__(self) -> str:
        return to_text(self)


BARE = Tree(LEAF)


def corolla(n: int, label: Any = None) -> Tree:
    """
    Tree with a single inner vertex and n leaves.
    """
    return Tree(Vertex((LEAF,) * n, label))


def lollipop(label: Any = None) -> Tree:
    return Tree(Vertex((), label))


### STRUCTURE ###


@lru_cache(maxsize=None)
def node_leaf_count(node: Node) -> int:
    if isinstance(node, Leaf):
        return 1
    return sum(node_leaf_count(child) for child in node.children)


@lru_cache(maxsize=None)
def node_inner_count(node: Node) -> int:
    if isinstance(node, Leaf):
        return 0
    return 1 + sum(node_inner_count(child) for child in node.children)


def _walk_vertices(
    node: Node, address: TreeAddress
) -> Iterator[Tuple[TreeAddress, Vertex]]:
    if isinstance(node, Leaf):
        return
    yield address, node
    for index, child in enumerate(node.children):
        yield from _walk_vertices(child, address + (index,))


def leaf_addresses(tree: Tree) -> List[TreeAddress]:
    """
    Addresses of the leaves in planar order.
    """
    addresses: List[TreeAddress] = []

    def walk(node: Node, address: TreeAddress) -> None:
        if isinstance(node, Leaf):
            addresses.append(address)
            return
        for index, child in enumerate(node.children):
            walk(child, address + (index,))

    walk(tree.root, ())
    return addresses


def leaf_address(tree: Tree, i: int) -> TreeAddress:
    """
    Address of the i-th leaf, 1-based.
    """
    addresses = leaf_addresses(tree)
    if not 1 <= i <= len(addresses):
        raise ArityError(
            f"Leaf index {i} out of range for a tree with "
            f"{len(addresses)} leaves."
        )
    return addresses[i - 1]


def replace_node(node: Node, address: TreeAddress, new: Node) -> Node:
    """
    Copy of `node` with the subtree at `address` swapped for `new`.
    """
    if not address:
        return new
    assert isinstance(node, Vertex)

    head, rest = address[0], address[1:]
    children = list(node.children)
    children[head] = replace_node(children[head], rest, new)

    return replace(node, children=tuple(children))


### OPERATIONS ###


def graft(tree: Tree, i: int, other: Tree) -> Tree:
    """
    Identify the root edge of `other` with the i-th leaf of `tree`.
    """
    address = leaf_address(tree, i)
    return Tree(replace_node(tree.root, address, other.root))


def graft_edge(tree: Tree, i: int) -> TreeAddress:
    """
    Address of the edge created by `graft(tree, i, ...)`, named by its upper
    endpoint.
    """
    return leaf_address(tree, i)


def contract_inner_edge(
    tree: Tree, edge: TreeAddress, merge_label: Optional[LabelMerger] = None
) -> Tree:
    """
    Merge the two endpoints of the inner edge whose upper endpoint sits at
    `edge`. The upper vertex's children are spliced into the lower one's
    list at the contracted position; `merge_label(lower, j, upper)` computes
    the new label with j the 1-based position.
    """
    if not edge:
        raise ArityError("The root edge cannot be contracted.")

    try:
        upper = tree[edge]
        lower = tree[edge[:-1]]
    except IndexError as error:
        raise ArityError(f"No edge at address {edge}.") from error

    if not isinstance(upper, Vertex):
        raise ArityError(f"Edge {edge} is a leaf edge.")
    assert isinstance(lower, Vertex)

    position = edge[-1]
    children = (
        lower.children[:position]
        + upper.children
        + lower.children[position + 1 :]
    )
    label = lower.label
    if merge_label is not None:
        label = merge_label(lower.label, position + 1, upper.label)

    merged = Vertex(children, label)
    return Tree(replace_node(tree.root, edge[:-1], merged))


def levels(tree: Tree) -> Dict[TreeAddress, int]:
    """
    Distance of every inner vertex to the root; the root vertex has level 1.
    """
    return {address: len(address) + 1 for address, _ in tree.vertices()}


def canonical_vertex_order(tree: Tree) -> List[TreeAddress]:
    """
    Depth-first, root first, children left to right.
    """
    return [address for address, _ in tree.vertices()]


### ENUMERATION ###


def _arity_allowed(k: int, allow_corks: bool, min_arity: int) -> bool:
    if k == 0:
        return allow_corks
    return k >= max(min_arity, 1)


@lru_cache(maxsize=None)
def _nodes(
    n_leaves: int, max_inner: int, allow_corks: bool, min_arity: int
) -> Tuple[Tuple[Node, int], ...]:
    """
    All nodes with exactly n_leaves leaves and at most max_inner inner
    vertices, paired with their inner vertex count.
    """
    found: List[Tuple[Node, int]] = []
    if n_leaves == 1:
        found.append((LEAF, 0))
    if max_inner == 0:
        return tuple(found)

    # children without leaves each cost at least one inner vertex
    max_children = n_leaves + max_inner - 1
    for k in range(0, max_children + 1):
        if not _arity_allowed(k, allow_corks, min_arity):
            continue
        for children, used in _forests(
            n_leaves, max_inner - 1, k, allow_corks, min_arity
        ):
            found.append((Vertex(children), used + 1))

    return tuple(found)


@lru_cache(maxsize=None)
def _forests(
    n_leaves: int,
    max_inner: int,
    k: int,
    allow_corks: bool,
    min_arity: int,
) -> Tuple[Tuple[Tuple[Node, ...], int], ...]:
    if k == 0:
        return (((), 0),) if n_leaves == 0 else ()

    found = []
    for first_leaves in range(n_leaves + 1):
        for first, used in _nodes(
            first_leaves, max_inner, allow_corks, min_arity
        ):
            for rest, rest_used in _forests(
                n_leaves - first_leaves,
                max_inner - used,
                k - 1,
                allow_corks,
                min_arity,
            ):
                found.append(((first,) + rest, used + rest_used))

    return tuple(found)


def enumerate_trees(
    n_leaves: int,
    max_inner_vertices: int,
    allow_corks: bool = False,
    min_arity: int = 1,
) -> List[Tree]:
    """
    Every planar unlabelled tree with `n_leaves` leaves and at most
    `max_inner_vertices` inner vertices, ordered by inner vertex count and
    then by text serialization.
    """
    if n_leaves < 0 or max_inner_vertices < 0:
        return []

    nodes = _nodes(n_leaves, max_inner_vertices, allow_corks, min_arity)
    trees = sorted(
        (Tree(node) for node, _ in nodes),
        key=lambda tree: (tree.inner_count, to_text(tree)),
    )
    logger.debug(
        f"Enumerated {len(trees)} trees with {n_leaves} leaves and "
        f"<= {max_inner_vertices} inner vertices."
    )

    return trees


### SERIALIZATION ###


def _label_text(label: Any) -> str:
    return "v" if label is None else str(label)


def node_to_text(
    node: Node, label_text: Callable[[Any], str] = _label_text
) -> str:
    if isinstance(node, Leaf):
        return "*"
    inner = ",".join(
        node_to_text(child, label_text) for child in node.children
    )
    return f"{label_text(node.label)}[{inner}]"


def to_text(
    tree: Tree, label_text: Callable[[Any], str] = _label_text
) -> str:
    """
    Bracket form: `*` leaf, `label[c1,...,ck]` vertex, `|` bare tree.
    """
    if tree.is_bare:
        return "|"
    return node_to_text(tree.root, label_text)


def node_to_json(
    node: Node, label_json: Optional[Callable[[Any], Any]] = None
) -> Any:
    if isinstance(node, Leaf):
        return "*"
    data: Dict[str, Any] = {}
    if node.label is not None and label_json is not None:
        data["label"] = label_json(node.label)
    data["children"] = [node_to_json(c, label_json) for c in node.children]
    return data


def to_json(
    tree: Tree, label_json: Optional[Callable[[Any], Any]] = None
) -> Any:
    """
    JSON-ready form: `{"children": [...]}` vertices, `"*"` leaves and `"|"`
    for the bare tree.
    """
    if tree.is_bare:
        return "|"
    return node_to_json(tree.root, label_json)


def to_json_string(
    tree: Tree, label_json: Optional[Callable[[Any], Any]] = None
) -> str:
    return json.dumps(to_json(tree, label_json), separators=(",", ":"))


def from_json(
    data: Any, parse_label: Optional[Callable[[Any], Any]] = None
) -> Tree:
    if data == "|":
        return BARE
    return Tree(_node_from_json(data, parse_label))


def _node_from_json(
    data: Any, parse_label: Optional[Callable[[Any], Any]]
) -> Node:
    if data == "*":
        return LEAF
    if not isinstance(data, dict) or "children" not in data:
        raise ParseError(f"Not a tree node: {data!r}")

    label = None
    if "label" in data:
        label = parse_label(data["label"]) if parse_label else data["label"]
    children = tuple(_node_from_json(c, parse_label) for c in data["children"])

    return Vertex(children, label)


class _TextParser:
    """
    Recursive descent over the bracket form. Labels run up to the opening
    `[` that is not nested inside parentheses or braces.
    """

    def __init__(self, text: str, parse_label: Callable[[str], Any]):
        self.text = "".join(text.split())
        self.position = 0
        self.parse_label = parse_label

    def parse(self) -> Tree:
        if self.text == "|":
            return BARE
        node = self._node()
        if self.position != len(self.text):
            raise ParseError(
                f"Trailing input at {self.position}: {self.text!r}"
            )
        return Tree(node)

    def _node(self) -> Node:
        if self._peek() == "*":
            self.position += 1
            return LEAF

        label_text = self._label()
        self._expect("[")
        children: List[Node] = []
        if self._peek() != "]":
            children.append(self._node())
            while self._peek() == ",":
                self.position += 1
                children.append(self._node())
        self._expect("]")

        label = None if label_text == "v" else self.parse_label(label_text)
        return Vertex(tuple(children), label)

    def _label(self) -> str:
        start = self.position
        depth = 0
        while self.position < len(self.text):
            char = self.text[self.position]
            if char in "({":
                depth += 1
            elif char in ")}":
                depth -= 1
            elif char in "[],*|" and depth == 0:
                break
            self.position += 1

        label = self.text[start : self.position]
        if not label:
            raise ParseError(f"Missing label at {start}: {self.text!r}")
        return label

    def _peek(self) -> str:
        if self.position >= len(self.text):
            raise ParseError(f"Unexpected end of input: {self.text!r}")
        return self.text[self.position]

    def _expect(self, char: str) -> None:
        if self._peek() != char:
            raise ParseError(
                f"Expected {char!r} at {self.position}: {self.text!r}"
            )
        self.position += 1


def parse_tree(
    text: str, parse_label: Callable[[str], Any] = lambda label: label
) -> Tree:
    """
    Inverse of `to_text`; `v` reads back as an unlabelled vertex.
    """
    return _TextParser(text, parse_label).parse()
