"""
Graded operad structure on canonical trees: normalization into
uAss ∐ F(nu) (or Ass ∐ F(nu)), signed partial composition and the
vertex-wise substitution every map of operads is evaluated through.

Tensor factors are ordered by the preorder of vertices (root first,
children left to right), so grafting b into a and moving b past the
vertices of a that come after the grafting leaf costs the Koszul sign.
"""
import json
from functools import lru_cache
from itertools import product as cartesian
from typing import Callable, List, Sequence, Tuple

from src.dg.element import Element, parse_raw_terms, tree_degree
from src.dg.labels import GradedLabel, Nu
from src.errors import (
    AmbientError,
    ArityError,
    CanonicalFormError,
    ParseError,
)
from src.set_operad.associative import (
    IDENTITY,
    AssOperad,
    Identity,
    UnitalAssOperad,
)
from src.set_operad.coproduct import CoproductOperad
from src.tree import LEAF, Leaf, Node, Tree, Vertex, graft, to_text
from src.utils import Ambient, koszul_sign, product, sign


@lru_cache(maxsize=None)
def ambient_operad(ambient: Ambient) -> CoproductOperad:
    """
    The Set-level coproduct that carries the canonical form.
    """
    ambient = Ambient(ambient)
    if ambient == Ambient.UINF_UA:
        return CoproductOperad(UnitalAssOperad(), name="uAss ∐ F(nu)")
    return CoproductOperad(AssOperad(), name="Ass ∐ F(nu)")


def normalize(raw: Tree, ambient: Ambient) -> Element:
    """
    +1 times the canonical tree of a raw tree. Merging O-vertices only
    touches degree-0 labels and keeps the preorder of the nu-vertices, so
    no sign arises.
    """
    return Element.basis(ambient_operad(ambient).normalize(raw), ambient)


def corolla_of(label: GradedLabel) -> Tree:
    """
    Raw one-vertex tree; the identity label gives the bare tree.
    """
    if isinstance(label, Identity):
        return Tree(LEAF)
    return Tree(Vertex((LEAF,) * label.arity, label))


def generator(label: GradedLabel, ambient: Ambient) -> Element:
    """
    The element a single label stands for.
    """
    if not isinstance(label, Nu):
        ambient_operad(ambient).is_base_label(label)
    return normalize(corolla_of(label), ambient)


def identity(ambient: Ambient) -> Element:
    return generator(IDENTITY, ambient)


### COMPOSITION ###


def graft_sign(a: Tree, i: int, b: Tree) -> int:
    """
    (-1)^(|b| * sum of degrees of the vertices of a after leaf i).
    """
    degree_b = tree_degree(b)
    if degree_b % 2 == 0:
        return 1

    after = 0
    leaves_seen = 0

    def walk(node: Node) -> None:
        nonlocal after, leaves_seen
        if isinstance(node, Leaf):
            leaves_seen += 1
            return
        if leaves_seen >= i:
            after += node.label.degree
        for child in node.children:
            walk(child)

    if not a.is_bare:
        walk(a.root)

    return sign(degree_b * after)


def compose_trees(a: Tree, i: int, b: Tree, ambient: Ambient) -> Element:
    if not 1 <= i <= a.arity:
        raise ArityError(f"Slot {i} out of range for arity {a.arity}.")
    return normalize(graft(a, i, b), ambient).scale(graft_sign(a, i, b))


def compose(x: Element, i: int, y: Element) -> Element:
    """
    Bilinear partial composition x o_i y.
    """
    if x.ambient != y.ambient:
        raise AmbientError(f"Cannot compose {x.ambient} with {y.ambient}.")
    if not 1 <= i <= x.arity:
        raise ArityError(f"Slot {i} out of range for arity {x.arity}.")

    result = Element.zero(x.arity + y.arity - 1, x.ambient)
    for a, ca in x.items():
        for b, cb in y.items():
            result.accumulate(compose_trees(a, i, b, x.ambient), ca * cb)
    return result


def compose_labels(
    outer: GradedLabel, i: int, inner: GradedLabel, ambient: Ambient
) -> Element:
    return compose(generator(outer, ambient), i, generator(inner, ambient))


### SUBSTITUTION ###


def _substituted(tree: Tree, picks: Sequence[Tree]) -> Tuple[Tree, int]:
    """
    Raw tree obtained by replacing the k-th vertex (preorder) of `tree` by
    picks[k], and the Koszul sign of moving the vertices of the picks from
    their input order into the preorder of the result.
    """
    counts = [len(list(pick.vertices())) for pick in picks]
    offsets = [sum(counts[:k]) for k in range(len(picks))]
    degrees = [
        vertex.label.degree for pick in picks for _, vertex in pick.vertices()
    ]
    order: List[int] = []
    next_vertex = 0

    def build(node: Node) -> Node:
        nonlocal next_vertex
        if isinstance(node, Leaf):
            return node
        k = next_vertex
        next_vertex += 1
        pick = picks[k]
        if pick.arity != node.arity:
            raise ArityError(
                f"Cannot replace a vertex of arity {node.arity} by a tree "
                f"of arity {pick.arity}."
            )
        if pick.is_bare:
            return build(node.children[0])

        position = 0
        leaf = 0

        def copy(inner: Node) -> Node:
            nonlocal position, leaf
            if isinstance(inner, Leaf):
                leaf += 1
                return build(node.children[leaf - 1])
            order.append(offsets[k] + position)
            position += 1
            return Vertex(
                tuple(copy(child) for child in inner.children), inner.label
            )

        return copy(pick.root)

    if tree.is_bare:
        return tree, 1
    root = build(tree.root)

    return Tree(root), koszul_sign(degrees, order)


def substitute(tree: Tree, images: Sequence[Element]) -> Element:
    """
    Expand images[k] into the k-th vertex of `tree` (preorder) and
    normalize; the result is multilinear in the images.
    """
    vertex_count = tree.inner_count
    if len(images) != vertex_count:
        raise ArityError(
            f"{len(images)} images for a tree with {vertex_count} vertices."
        )
    ambient = images[0].ambient if images else None
    arity = tree.arity
    if ambient is None:
        raise AmbientError("Substitution into the bare tree needs no images.")

    result = Element.zero(arity, ambient)
    if any(image.is_zero() for image in images):
        return result

    for choice in cartesian(*(image.items() for image in images)):
        picks = [tree_ for tree_, _ in choice]
        coefficient = product(c for _, c in choice)
        raw, koszul = _substituted(tree, picks)
        result.accumulate(normalize(raw, ambient), coefficient * koszul)
    return result


def map_vertices(
    tree: Tree,
    image_of: Callable[[int, GradedLabel], Element],
    ambient: Ambient,
) -> Element:
    """
    substitute() with images chosen per (preorder index, label).
    """
    if tree.is_bare:
        return identity(ambient)
    images = [
        image_of(k, vertex.label)
        for k, (_, vertex) in enumerate(tree.vertices())
    ]
    return substitute(tree, images)


def degree_before(tree: Tree, k: int) -> int:
    """
    Sum of the degrees of the vertices preceding the k-th one.
    """
    return sum(
        vertex.label.degree
        for index, (_, vertex) in enumerate(tree.vertices())
        if index < k
    )


### INPUT ###


def parse_element(text: str, ambient: Ambient) -> Element:
    """
    A JSON term list, or a signed sum of raw bracket-form trees which is
    normalized term by term. JSON trees must already be canonical in the
    given ambient.
    """
    text = text.strip()
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as error:
            raise ParseError(f"Invalid JSON element: {error}") from error
        element = Element.from_json(data, ambient)
        operad = ambient_operad(ambient)
        for tree in element.trees():
            if operad.normalize(tree) != tree:
                raise CanonicalFormError(
                    f"{to_text(tree)} is not canonical in {ambient}."
                )
        return element

    terms = parse_raw_terms(text)
    if not terms:
        raise ParseError(f"No terms in {text!r}.")
    result = Element.zero(terms[0][1].arity, ambient)
    for coefficient, raw in terms:
        result.accumulate(normalize(raw, ambient), coefficient)
    return result
