"""
Free operads F(V) and binary coproducts O ∐ F(V) on labelled trees.

Elements of the coproduct are trees whose odd levels carry elements of O and
whose even levels carry generators. Two forms are used:

- the alternating form: every vertex at an odd level is an O-vertex, every
  leaf hangs from an O-vertex, the identity is `id` over a single leaf;
- the canonical form (what `normalize` returns): the alternating form with
  every `id` whose child is a leaf replaced by the leaf, so that `id` only
  survives as padding over a generator and the identity is the bare tree.
"""
from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from src.errors import AmbientError, ArityError, CanonicalFormError
from src.set_operad.associative import Identity, MuCorolla, Unit
from src.set_operad.base import SetOperad
from src.tree import (
    BARE,
    LEAF,
    Leaf,
    Node,
    Tree,
    Vertex,
    enumerate_trees,
    graft,
    levels,
    to_text,
)
from src.utils import Logging

logger = Logging.get_console_logger()


@dataclass(frozen=True, slots=True)
class Cork:
    """
    Free generator of arity 0, drawn filled or open.
    """

    name: str = "u'"
    filled: bool = True

    @property
    def arity(self) -> int:
        return 0

    @property
    def degree(self) -> int:
        return 0

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Generator:
    """
    Named free generator of a given arity.
    """

    name: str
    arity: int

    @property
    def degree(self) -> int:
        return 0

    def __str__(self) -> str:
        return self.name


def _labellings(
    tree: Tree, choices: Dict[Tuple[int, ...], Sequence[Any]]
) -> Iterator[Tree]:
    """
    Every way of labelling the vertices of `tree` from per-address choices.
    """
    addresses = [address for address, _ in tree.vertices()]
    for picked in product(*(choices[address] for address in addresses)):
        labels = dict(zip(addresses, picked))
        yield Tree(_relabel(tree.root, (), labels))


def _relabel(node: Node, address, labels) -> Node:
    if isinstance(node, Leaf):
        return node
    children = tuple(
        _relabel(child, address + (index,), labels)
        for index, child in enumerate(node.children)
    )
    return Vertex(children, labels[address])


class FreeOperad(SetOperad):
    """
    F(V): labelled planar trees, composition by grafting.
    """

    name = "F(V)"

    def __init__(self, generators: Sequence[Any], max_inner: int = 2):
        self.generators = tuple(generators)
        self.max_inner = max_inner

    @property
    def identity(self) -> Tree:
        return BARE

    def arity(self, x: Tree) -> int:
        return x.leaf_count

    def _compose(self, a: Tree, i: int, b: Tree) -> Tree:
        return graft(a, i, b)

    def elements(self, n: int) -> Iterator[Tree]:
        arities = {generator.arity for generator in self.generators}
        allow_corks = 0 in arities
        for shape in enumerate_trees(n, self.max_inner, allow_corks, 0):
            choices = {
                address: [g for g in self.generators if g.arity == v.arity]
                for address, v in shape.vertices()
            }
            yield from _labellings(shape, choices)

    def format(self, x: Tree) -> str:
        return str(x)


class CoproductOperad(SetOperad):
    """
    O ∐ F(V) for a base operad O whose elements are arity-carrying labels.

    Labels the base does not contain are generators. When `generators` is
    given, it is the full list of V (needed for enumeration and checked on
    input); otherwise any non-base label is accepted.
    """

    name = "O ∐ F(V)"

    def __init__(
        self,
        base: SetOperad,
        generators: Sequence[Any] = (),
        max_inner: int = 3,
        name: Optional[str] = None,
    ):
        self.base = base
        self.generators = tuple(generators)
        self._generator_set = frozenset(self.generators)
        self.max_inner = max_inner
        if name is not None:
            self.name = name

    ### operad structure ###

    @property
    def identity(self) -> Tree:
        return BARE

    def arity(self, x: Tree) -> int:
        return x.leaf_count

    def _compose(self, a: Tree, i: int, b: Tree) -> Tree:
        return self.normalize(graft(a, i, b))

    def include(self, label: Any) -> Tree:
        """
        Image of an element of O.
        """
        return self.normalize(Tree(Vertex((LEAF,) * label.arity, label)))

    def generator(self, label: Any) -> Tree:
        """
        Image of a generator.
        """
        return self.normalize(Tree(Vertex((LEAF,) * label.arity, label)))

    ### normal form ###

    def is_base_label(self, label: Any) -> bool:
        if self.base.contains(label):
            return True
        if isinstance(label, (MuCorolla, Unit, Identity)):
            raise AmbientError(f"{label} is not available in {self.name}.")
        if self._generator_set and label not in self._generator_set:
            raise CanonicalFormError(f"Unknown generator {label}.")
        return False

    def normalize(self, tree: Tree) -> Tree:
        """
        Canonical form of a raw labelled tree: adjacent O-vertices merged
        through the composition of O, identity padding inserted over
        generators and removed elsewhere.
        """
        if tree.is_bare:
            return BARE
        return Tree(self.to_canonical(self.to_alternating(tree.root)))

    def to_alternating(self, root: Vertex) -> Vertex:
        """
        Alternating form of a raw tree given by its root vertex.
        """
        if self.is_base_label(root.label):
            label, children = self._flatten(root)
            return Vertex(tuple(children), label)
        return Vertex((self._alternate_generator(root),), self.base.identity)

    def _flatten(self, vertex: Vertex) -> Tuple[Any, List[Node]]:
        """
        Merge a cluster of adjacent O-vertices from the left; the label runs
        through O's composition at the position where the child is spliced.
        """
        label = vertex.label
        if label.arity != vertex.arity:
            raise ArityError(
                f"Label {label} of arity {label.arity} on a vertex with "
                f"{vertex.arity} children."
            )

        spliced: List[Node] = []
        for child in vertex.children:
            if isinstance(child, Leaf):
                spliced.append(child)
            elif self.is_base_label(child.label):
                child_label, grandchildren = self._flatten(child)
                label = self.base.compose(
                    label, len(spliced) + 1, child_label
                )
                spliced.extend(grandchildren)
            else:
                spliced.append(self._alternate_generator(child))

        return label, spliced

    def _alternate_generator(self, vertex: Vertex) -> Vertex:
        label = vertex.label
        if label.arity != vertex.arity:
            raise ArityError(
                f"Label {label} of arity {label.arity} on a vertex with "
                f"{vertex.arity} children."
            )

        clusters = []
        for child in vertex.children:
            if isinstance(child, Leaf):
                clusters.append(Vertex((LEAF,), self.base.identity))
            elif self.is_base_label(child.label):
                child_label, grandchildren = self._flatten(child)
                clusters.append(Vertex(tuple(grandchildren), child_label))
            else:
                pad = (self._alternate_generator(child),)
                clusters.append(Vertex(pad, self.base.identity))

        return Vertex(tuple(clusters), label)

    def to_canonical(self, cluster: Vertex) -> Node:
        """
        Drop `id` over leaves from an alternating tree.
        """
        if cluster.label == self.base.identity and isinstance(
            cluster.children[0], Leaf
        ):
            return LEAF

        children = []
        for child in cluster.children:
            if isinstance(child, Leaf):
                children.append(child)
            else:
                grandchildren = tuple(
                    self.to_canonical(c) for c in child.children
                )
                children.append(Vertex(grandchildren, child.label))

        return Vertex(tuple(children), cluster.label)

    def is_canonical(self, tree: Tree) -> bool:
        return self.normalize(tree) == tree

    ### enumeration ###

    def elements(self, n: int) -> Iterator[Tree]:
        """
        Canonical elements of arity n whose alternating form has at most
        `max_inner` vertices.
        """
        for shape in enumerate_trees(n, self.max_inner, True, 0):
            choices = self._alternating_choices(shape)
            if choices is None:
                continue
            for labelled in _labellings(shape, choices):
                yield Tree(self.to_canonical(labelled.root))

    def _alternating_choices(
        self, shape: Tree
    ) -> Optional[Dict[Tuple[int, ...], List[Any]]]:
        if shape.is_bare:
            return None

        level = levels(shape)
        choices = {}
        for address, vertex in shape.vertices():
            odd = level[address] % 2 == 1
            if not odd and any(isinstance(c, Leaf) for c in vertex.children):
                return None
            if odd:
                options = list(self.base.elements(vertex.arity))
            else:
                options = [
                    g for g in self.generators if g.arity == vertex.arity
                ]
            if not options:
                return None
            choices[address] = options

        return choices


def coproduct_compose(
    operad: CoproductOperad, x: Tree, i: int, y: Tree
) -> Tree:
    """
    x o_i y on canonical trees of O ∐ F(V); raw input is refused.
    """
    for tree in (x, y):
        if not operad.is_canonical(tree):
            raise CanonicalFormError(
                f"{to_text(tree)} is not canonical in {operad.name}."
            )
    return operad.compose(x, i, y)
