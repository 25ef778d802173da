"""
The associative operads Ass and uAss by their normal forms.

Both have a single element in each arity they live in: `id` in arity 1, the
corolla mu^(n-1) in arity n >= 2 and, for uAss only, the unit u in arity 0.
Composition is arity arithmetic.
"""
from dataclasses import dataclass
from typing import Iterator, Union

from src.errors import AmbientError, ArityError
from src.set_operad.base import SetOperad
from src.tree import Leaf, Tree, Vertex


@dataclass(frozen=True, slots=True)
class MuCorolla:
    """
    The corolla mu^(k-1) of arity k >= 2; mu itself is arity 2.
    """

    arity: int

    def __post_init__(self):
        if self.arity < 2:
            raise ArityError(f"mu-corollas have arity >= 2, got {self.arity}.")

    @property
    def degree(self) -> int:
        return 0

    def __str__(self) -> str:
        if self.arity == 2:
            return "mu"
        return f"mu^{self.arity - 1}"


@dataclass(frozen=True, slots=True)
class Unit:
    """
    The strict unit u of uAss.
    """

    @property
    def arity(self) -> int:
        return 0

    @property
    def degree(self) -> int:
        return 0

    def __str__(self) -> str:
        return "u"


@dataclass(frozen=True, slots=True)
class Identity:
    @property
    def arity(self) -> int:
        return 1

    @property
    def degree(self) -> int:
        return 0

    def __str__(self) -> str:
        return "id"


AssLabel = Union[MuCorolla, Unit, Identity]

MU = MuCorolla(2)
UNIT = Unit()
IDENTITY = Identity()


def associative_label(n: int, unital: bool = True) -> AssLabel:
    """
    The unique element of arity n.
    """
    if n == 0:
        if not unital:
            raise AmbientError("Ass has no element of arity 0.")
        return UNIT
    if n == 1:
        return IDENTITY
    return MuCorolla(n)


def uass_compose(a: AssLabel, i: int, b: AssLabel) -> AssLabel:
    """
    mu^(p-1) o_i mu^(q-1) = mu^(p+q-2) and mu o_j u = id.
    """
    if not 1 <= i <= a.arity:
        raise ArityError(f"Slot {i} out of range for {a}.")
    return associative_label(a.arity + b.arity - 1)


def ass_normal_form(tree: Tree) -> MuCorolla:
    """
    Collapse a tree of mu-vertices to its corolla.
    """
    _check_binary_or_more(tree.root)
    return MuCorolla(tree.leaf_count)


def _check_binary_or_more(node) -> None:
    if isinstance(node, Leaf):
        return
    assert isinstance(node, Vertex)
    if node.arity < 2:
        raise ArityError(
            f"Vertex of arity {node.arity} in a tree of mu-vertices."
        )
    for child in node.children:
        _check_binary_or_more(child)


class AssOperad(SetOperad):
    """
    Non-unital associative operad, Ass(n) = {mu^(n-1)} for n >= 1.
    """

    name = "Ass"
    unital = False

    def __init__(self, max_arity: int = 8):
        self.max_arity = max_arity

    @property
    def identity(self) -> AssLabel:
        return IDENTITY

    def arity(self, x: AssLabel) -> int:
        return x.arity

    def contains(self, label) -> bool:
        if isinstance(label, Unit):
            return self.unital
        return isinstance(label, (MuCorolla, Identity))

    def _compose(self, a: AssLabel, i: int, b: AssLabel) -> AssLabel:
        if not (self.contains(a) and self.contains(b)):
            raise AmbientError(f"{a} o_{i} {b} leaves {self.name}.")
        return uass_compose(a, i, b)

    def elements(self, n: int) -> Iterator[AssLabel]:
        if n == 0 and not self.unital:
            return
        if n <= self.max_arity:
            yield associative_label(n, self.unital)


class UnitalAssOperad(AssOperad):
    """
    uAss: Ass with a unit u in arity 0 and mu o_1 u = id = mu o_2 u.
    """

    name = "uAss"
    unital = True
