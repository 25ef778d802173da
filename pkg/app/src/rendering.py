"""
Deterministic DOT and ASCII drawings of trees, corollas with corks and
elements. Corks `u` are drawn as open circles, `u'` filled.
"""
from typing import Any, List, Optional

from src.dg.element import Element, tree_to_operadic
from src.set_operad.associative import Unit
from src.set_operad.coproduct import Cork
from src.set_operad.corks import CorollaWithCorks, corolla_to_tree
from src.tree import Leaf, Node, Tree
from src.utils import load_config

config = load_config()

LEAF_SHAPE = config["render"]["leaf_shape"]
OPEN_CORK = config["render"]["open_cork"]
FILLED_CORK = config["render"]["filled_cork"]
VERTEX_SHAPE = config["render"]["vertex_shape"]


def _is_cork(label: Any) -> bool:
    return isinstance(label, (Cork, Unit))


def _node_attributes(label: Any) -> str:
    if isinstance(label, Cork) and label.filled:
        return (
            f'shape={FILLED_CORK}, style=filled, fillcolor=black, '
            f'label="", xlabel="{label}"'
        )
    if _is_cork(label):
        return f'shape={OPEN_CORK}, label="", xlabel="{label}"'
    return f'shape={VERTEX_SHAPE}, label="{label}"'


class _DotWriter:
    """
    Numbers nodes in preorder; edges point from child to parent, the root
    edge leaves the root vertex downwards.
    """

    def __init__(self, prefix: str = "n"):
        self.prefix = prefix
        self.counter = 0
        self.lines: List[str] = []

    def _name(self) -> str:
        name = f"{self.prefix}{self.counter}"
        self.counter += 1
        return name

    def node(self, node: Node, indent: str) -> str:
        name = self._name()
        if isinstance(node, Leaf):
            self.lines.append(
                f'{indent}{name} [shape={LEAF_SHAPE}, label=""];'
            )
            return name

        self.lines.append(f"{indent}{name} [{_node_attributes(node.label)}];")
        for child in node.children:
            child_name = self.node(child, indent)
            self.lines.append(f"{indent}{child_name} -> {name};")
        return name

    def tree(self, tree: Tree, indent: str) -> None:
        root_name = self._name()
        self.lines.append(f'{indent}{root_name} [shape=none, label=""];')
        if tree.is_bare:
            leaf = self._name()
            self.lines.append(
                f'{indent}{leaf} [shape={LEAF_SHAPE}, label=""];'
            )
            self.lines.append(f"{indent}{leaf} -> {root_name};")
            return
        top = self.node(tree.root, indent)
        self.lines.append(f"{indent}{top} -> {root_name};")


def tree_to_dot(tree: Tree, name: str = "tree") -> str:
    writer = _DotWriter()
    writer.tree(tree, "  ")
    body = "\n".join(writer.lines)
    return f"digraph {name} {{\n  rankdir=BT;\n{body}\n}}\n"


def corolla_to_dot(x: CorollaWithCorks) -> str:
    return tree_to_dot(corolla_to_tree(x), "corolla")


def element_to_dot(element: Element) -> str:
    """
    One cluster per term, labelled with its signed coefficient.
    """
    writer = _DotWriter()
    lines = ["digraph element {", "  rankdir=BT;"]
    for index, (tree, coefficient) in enumerate(element.items()):
        writer.lines = []
        writer.prefix = f"t{index}_"
        writer.counter = 0
        writer.tree(tree, "    ")
        lines.append(f"  subgraph cluster_{index} {{")
        lines.append(f'    label="{coefficient:+d}";')
        lines.extend(writer.lines)
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


### TEXT ###


def _text_lines(node: Node, prefix: str, last: bool, out: List[str]) -> None:
    branch = "`-- " if last else "|-- "
    text = "*" if isinstance(node, Leaf) else str(node.label)
    out.append(f"{prefix}{branch}{text}")
    if isinstance(node, Leaf):
        return
    inner = prefix + ("    " if last else "|   ")
    for position, child in enumerate(node.children):
        _text_lines(child, inner, position == len(node.children) - 1, out)


def tree_to_ascii(tree: Tree) -> str:
    """
    Root on top, one line per node; `*` is a leaf and `|` the bare tree.
    """
    if tree.is_bare:
        return "|"
    out = [str(tree.root.label)]
    for position, child in enumerate(tree.root.children):
        last = position == len(tree.root.children) - 1
        _text_lines(child, "", last, out)
    return "\n".join(out)


def element_to_ascii(element: Element, title: Optional[str] = None) -> str:
    if element.is_zero():
        return "0"
    blocks = []
    for tree, coefficient in element.items():
        header = f"{coefficient:+d} * {tree_to_operadic(tree)}"
        blocks.append(f"{header}\n{tree_to_ascii(tree)}")
    if title:
        blocks.insert(0, title)
    return "\n\n".join(blocks)
