"""
Finite Z-linear combinations of canonical trees of one arity.
"""
import json
import re
from typing import Any, Dict, Iterator, List, Mapping, Optional, Tuple

from src.dg.labels import (
    GradedLabel,
    Nu,
    label_from_json,
    label_to_json,
    parse_label,
)
from src.errors import AmbientError, ArityError, ParseError
from src.set_operad.associative import Identity
from src.tree import (
    Leaf,
    Node,
    Tree,
    from_json,
    parse_tree,
    to_json,
    to_text,
)
from src.utils import Ambient


def tree_degree(tree: Tree) -> int:
    return sum(vertex.label.degree for _, vertex in tree.vertices())


def tree_level(tree: Tree) -> int:
    """
    Largest |S| over the nu-vertices of the tree, 0 if there are none.
    """
    return max(
        (
            vertex.label.level
            for _, vertex in tree.vertices()
            if isinstance(vertex.label, Nu)
        ),
        default=0,
    )


def tree_key(tree: Tree) -> str:
    return to_text(tree)


class Element:
    """
    Sum of coefficient * canonical tree. Zero coefficients are never stored;
    every tree has the element's arity.
    """

    __slots__ = ("arity", "ambient", "_terms")

    def __init__(
        self,
        arity: int,
        ambient: Ambient,
        terms: Optional[Mapping[Tree, int]] = None,
    ):
        self.arity = arity
        self.ambient = Ambient(ambient)
        self._terms: Dict[Tree, int] = {}
        for tree, coefficient in (terms or {}).items():
            self._add_term(tree, coefficient)

    @classmethod
    def zero(cls, arity: int, ambient: Ambient) -> "Element":
        return cls(arity, ambient)

    @classmethod
    def basis(
        cls, tree: Tree, ambient: Ambient, coefficient: int = 1
    ) -> "Element":
        return cls(tree.arity, ambient, {tree: coefficient})

    def _add_term(self, tree: Tree, coefficient: int) -> None:
        if tree.arity != self.arity:
            raise ArityError(
                f"Tree {to_text(tree)} of arity {tree.arity} in an element "
                f"of arity {self.arity}."
            )
        total = self._terms.get(tree, 0) + coefficient
        if total:
            self._terms[tree] = total
        else:
            self._terms.pop(tree, None)

    ### container ###

    def items(self) -> List[Tuple[Tree, int]]:
        """
        Terms in a deterministic order.
        """
        return sorted(self._terms.items(), key=lambda t: tree_key(t[0]))

    def trees(self) -> List[Tree]:
        return [tree for tree, _ in self.items()]

    def coefficient(self, tree: Tree) -> int:
        return self._terms.get(tree, 0)

    def __iter__(self) -> Iterator[Tuple[Tree, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, Element):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.ambient == other.ambient
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.arity, self.ambient, frozenset(self._terms.items())))

    ### linear structure ###

    def _check_compatible(self, other: "Element") -> None:
        if self.arity != other.arity:
            raise ArityError(
                f"Cannot add elements of arity {self.arity} and "
                f"{other.arity}."
            )
        if self.ambient != other.ambient:
            raise AmbientError(
                f"Cannot add elements of {self.ambient} and {other.ambient}."
            )

    def __add__(self, other: "Element") -> "Element":
        self._check_compatible(other)
        result = Element(self.arity, self.ambient, self._terms)
        for tree, coefficient in other._terms.items():
            result._add_term(tree, coefficient)
        return result

    def copy(self) -> "Element":
        return Element(self.arity, self.ambient, self._terms)

    def accumulate(self, other: "Element", factor: int = 1) -> None:
        """
        self += factor * other, in place; only for freshly built results.
        """
        self._check_compatible(other)
        for tree, coefficient in other._terms.items():
            self._add_term(tree, factor * coefficient)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def scale(self, factor: int) -> "Element":
        return Element(
            self.arity,
            self.ambient,
            {tree: factor * c for tree, c in self._terms.items()},
        )

    def __mul__(self, factor: int) -> "Element":
        return self.scale(factor)

    __rmul__ = __mul__

    ### grading ###

    def degrees(self) -> List[int]:
        return sorted({tree_degree(tree) for tree in self._terms})

    @property
    def degree(self) -> int:
        """
        Degree of a homogeneous non-zero element.
        """
        found = self.degrees()
        if len(found) != 1:
            raise ArityError(f"Element is not homogeneous: {found}.")
        return found[0]

    def by_degree(self) -> Dict[int, "Element"]:
        parts: Dict[int, Element] = {}
        for tree, coefficient in self._terms.items():
            part = parts.setdefault(
                tree_degree(tree), Element(self.arity, self.ambient)
            )
            part._add_term(tree, coefficient)
        return parts

    def level(self) -> int:
        return max((tree_level(tree) for tree in self._terms), default=0)

    def labels(self) -> Iterator[GradedLabel]:
        for tree in self._terms:
            for _, vertex in tree.vertices():
                yield vertex.label

    ### serialization ###

    def __str__(self) -> str:
        return element_to_text(self)

    def __repr__(self) -> str:
        return f"Element({self.arity}, {self.ambient}, {str(self)!r})"

    def to_json(self) -> List[Dict[str, Any]]:
        """
        `[{"coeff": "<int>", "tree": <tree>}, ...]` in term order; arity
        and ambient travel out of band.
        """
        return [
            {"coeff": str(c), "tree": to_json(tree, label_to_json)}
            for tree, c in self.items()
        ]

    def to_json_string(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(
        cls, data: Any, ambient: Ambient, arity: Optional[int] = None
    ) -> "Element":
        """
        Read the term list; the arity comes from the trees, or from `arity`
        for the empty list.
        """
        if not isinstance(data, list):
            raise ParseError(f"An element is a list of terms, got {data!r}.")
        try:
            terms = [
                (from_json(term["tree"], label_from_json), int(term["coeff"]))
                for term in data
            ]
        except (KeyError, TypeError, ValueError) as error:
            if isinstance(error, ParseError):
                raise
            raise ParseError(f"Not an element: {error}") from error

        if terms:
            arity = terms[0][0].arity
        elif arity is None:
            raise ParseError("The zero element needs an explicit arity.")
        result = cls(arity, ambient)
        for tree, coefficient in terms:
            result._add_term(tree, coefficient)
        return result


### OPERADIC NOTATION ###


def _render_node(node: Node) -> Tuple[str, bool]:
    """
    (text, composite) for a canonical subtree; `id` padding is invisible.
    """
    assert not isinstance(node, Leaf)
    if isinstance(node.label, Identity):
        return _render_node(node.children[0])

    branches = [
        (j, child)
        for j, child in enumerate(node.children, start=1)
        if not isinstance(child, Leaf)
    ]
    name = str(node.label)
    if not branches:
        return name, False

    if len(branches) == 1:
        j, child = branches[0]
        text, composite = _render_node(child)
        if composite:
            text = f"({text})"
        return f"{name} o_{j} {text}", True

    parts = []
    for child in node.children:
        if isinstance(child, Leaf):
            parts.append("-")
        else:
            parts.append(_render_node(child)[0])
    return f"{name}({', '.join(parts)})", True


def tree_to_operadic(tree: Tree) -> str:
    """
    `mu o_1 nu(1,{1})` style; several grafted inputs are written
    `label(a, -, b)` with `-` for a free input.
    """
    if tree.is_bare:
        return "id"
    return _render_node(tree.root)[0]


def element_to_text(element: Element) -> str:
    if element.is_zero():
        return "0"

    pieces = []
    for position, (tree, coefficient) in enumerate(element.items()):
        magnitude = abs(coefficient)
        body = tree_to_operadic(tree)
        if magnitude != 1:
            body = f"{magnitude}*{body}"
        if position == 0:
            pieces.append(f"-{body}" if coefficient < 0 else body)
        else:
            pieces.append(f"{'-' if coefficient < 0 else '+'} {body}")
    return " ".join(pieces)


### INPUT ###


_COEFFICIENT = re.compile(r"^(\d+)\*(.+)$")


def _split_terms(text: str) -> List[Tuple[int, str]]:
    """
    Split a signed sum at top-level `+` and `-`.
    """
    terms: List[Tuple[int, str]] = []
    depth = 0
    current = ""
    current_sign = 1
    signed = False
    for char in "".join(text.split()):
        if char in "[({":
            depth += 1
        elif char in "])}":
            depth -= 1
        if char in "+-" and depth == 0:
            if current:
                terms.append((current_sign, current))
            elif signed:
                raise ParseError(f"Double sign in {text!r}.")
            current_sign = -1 if char == "-" else 1
            current = ""
            signed = True
            continue
        current += char
        signed = False
    if not current:
        raise ParseError(f"Missing term in {text!r}.")
    terms.append((current_sign, current))
    return terms


def parse_raw_terms(text: str) -> List[Tuple[int, Tree]]:
    """
    Read `c1*tree1 - tree2 + ...` with trees in bracket form; the trees are
    returned raw, before normalization.
    """
    result = []
    for term_sign, body in _split_terms(text):
        coefficient = 1
        match = _COEFFICIENT.match(body)
        if match:
            coefficient = int(match.group(1))
            body = match.group(2)
        if body == "0":
            continue
        tree = parse_tree(body, parse_label)
        result.append((term_sign * coefficient, tree))
    return result
