"""
Operads of objects of the groupoid operads: corollas with corks.

Ob(u∞A^Grd) = Ass ∐ F({u}[0]) and Ob(𝒰) = uAss ∐ F({u'}[0]). An
element is written mu^k(a1,...,am) with a_j in {id, u, u'}: m = k + 1
slots, the `id` slots are the leaves (composition slots), the others are
corks. With fewer than two slots the element is one of the bare tree `|`,
a single cork or, in Ob(𝒰) only, the white unit u.
"""
import re
from dataclasses import dataclass
from enum import StrEnum
from itertools import combinations
from typing import Iterator, List, Optional, Tuple

from src.errors import ArityError, ParseError
from src.reports import Check
from src.set_operad.associative import (
    IDENTITY,
    UNIT,
    AssOperad,
    MuCorolla,
    UnitalAssOperad,
)
from src.set_operad.base import SetOperad
from src.set_operad.coproduct import CoproductOperad, Cork
from src.tree import BARE, LEAF, Leaf, Tree, Vertex
from src.utils import Logging

logger = Logging.get_console_logger()


class ObjectVariant(StrEnum):
    """
    Which operad of objects a corolla belongs to.
    """

    UINF_A = "uinf-a"
    U = "U"


class Slot(StrEnum):
    LEAF = "id"
    # the free cork: u in Ob(u∞A^Grd), u' in Ob(𝒰)
    CORK = "cork"
    # the uAss unit, Ob(𝒰) only
    WHITE = "u"


CORK_NAMES = {ObjectVariant.UINF_A: "u", ObjectVariant.U: "u'"}


@dataclass(frozen=True, slots=True)
class CorollaWithCorks:
    """
    A corolla whose slots are leaves or corks, in planar order.
    """

    slots: Tuple[Slot, ...]
    variant: ObjectVariant = ObjectVariant.UINF_A

    def __post_init__(self):
        if not self.slots:
            raise ArityError("A corolla has at least one slot.")
        if len(self.slots) >= 2 and Slot.WHITE in self.slots:
            raise ArityError("The white unit is never a cork of a corolla.")
        if Slot.WHITE in self.slots and self.variant != ObjectVariant.U:
            raise ArityError("The white unit only exists in Ob(U).")

    @property
    def arity(self) -> int:
        return self.slots.count(Slot.LEAF)

    @property
    def cork_count(self) -> int:
        return len(self.slots) - self.arity

    @property
    def is_identity(self) -> bool:
        return self.slots == (Slot.LEAF,)

    def leaf_slot(self, i: int) -> int:
        """
        Position in `slots` of the i-th leaf, 1-based.
        """
        positions = [k for k, s in enumerate(self.slots) if s == Slot.LEAF]
        if not 1 <= i <= len(positions):
            raise ArityError(
                f"Leaf {i} out of range for {self} of arity {len(positions)}."
            )
        return positions[i - 1]

    def slot_name(self, slot: Slot) -> str:
        if slot == Slot.CORK:
            return CORK_NAMES[self.variant]
        return slot.value

    def __str__(self) -> str:
        if len(self.slots) == 1:
            if self.is_identity:
                return "|"
            return self.slot_name(self.slots[0])

        args = ",".join(self.slot_name(slot) for slot in self.slots)
        return f"{MuCorolla(len(self.slots))}({args})"


def identity_corolla(variant: ObjectVariant) -> CorollaWithCorks:
    return CorollaWithCorks((Slot.LEAF,), variant)


def cork(variant: ObjectVariant) -> CorollaWithCorks:
    return CorollaWithCorks((Slot.CORK,), variant)


def mu_corolla(n: int, variant: ObjectVariant) -> CorollaWithCorks:
    """
    Cork-free corolla of arity n (the image of mu^(n-1)).
    """
    return CorollaWithCorks((Slot.LEAF,) * n, variant)


### COMPOSITION ###


def uinfA_objects_compose(
    x: CorollaWithCorks, i: int, y: CorollaWithCorks
) -> CorollaWithCorks:
    """
    Graft y on the i-th leaf of x and contract, except when y is the cork u:
    the leaf then turns into a cork.
    """
    position = x.leaf_slot(i)
    if y.is_identity:
        return x
    if x.is_identity:
        return y

    slots = x.slots[:position] + y.slots + x.slots[position + 1 :]
    return CorollaWithCorks(slots, x.variant)


def U_objects_compose(
    x: CorollaWithCorks, i: int, y: CorollaWithCorks
) -> CorollaWithCorks:
    """
    Composition in Ob(𝒰): like Ob(u∞A^Grd) with black corks u', while the
    white unit u removes the slot it is plugged into. Four cases fall out of
    the corolla shape: mu o_1 u = mu o_2 u = id and
    mu(id,u') o_1 u = mu(u',id) o_1 u = u'.
    """
    position = x.leaf_slot(i)
    if y.slots != (Slot.WHITE,):
        return uinfA_objects_compose(x, i, y)

    slots = x.slots[:position] + x.slots[position + 1 :]
    if not slots:
        # id o_1 u
        return y
    return CorollaWithCorks(slots, x.variant)


### PARSING ###


_COROLLA_PATTERN = re.compile(r"^mu(?:\^(\d+))?\((.*)\)$")


def parse_corolla(
    text: str, variant: Optional[ObjectVariant] = None
) -> CorollaWithCorks:
    """
    Read `mu^k(a1,...,am)`, `|`, `id`, `u` or `u'`. Without an explicit
    variant the presence of u' marks an element of Ob(𝒰).
    """
    text = "".join(text.split())
    if variant is None:
        variant = ObjectVariant.U if "u'" in text else ObjectVariant.UINF_A

    if text in ("|", "id"):
        return identity_corolla(variant)
    if text == "u'":
        return cork(ObjectVariant.U)
    if text == "u":
        if variant == ObjectVariant.U:
            return white_unit()
        return cork(ObjectVariant.UINF_A)

    match = _COROLLA_PATTERN.match(text)
    if match is None:
        raise ParseError(f"Not a corolla with corks: {text!r}")

    exponent = int(match.group(1)) if match.group(1) else 1
    names = match.group(2).split(",")
    if len(names) != exponent + 1:
        raise ParseError(
            f"mu^{exponent} takes {exponent + 1} arguments, got {len(names)}."
        )

    slots = []
    for name in names:
        if name == "id":
            slots.append(Slot.LEAF)
        elif name == CORK_NAMES[variant]:
            slots.append(Slot.CORK)
        else:
            raise ParseError(f"Unknown corolla argument {name!r} in {text!r}")

    return CorollaWithCorks(tuple(slots), variant)


### OPERADS ###


class UinfAObjects(SetOperad):
    """
    Ob(u∞A^Grd), components truncated to at most `max_corks` corks.
    """

    name = "Ob(u∞A^Grd)"
    variant = ObjectVariant.UINF_A

    def __init__(self, max_corks: int = 3):
        self.max_corks = max_corks

    @property
    def identity(self) -> CorollaWithCorks:
        return identity_corolla(self.variant)

    def arity(self, x: CorollaWithCorks) -> int:
        return x.arity

    def _compose(self, a, i, b) -> CorollaWithCorks:
        return uinfA_objects_compose(a, i, b)

    def elements(self, n: int) -> Iterator[CorollaWithCorks]:
        """
        Ordered by cork count, then by cork positions.
        """
        for corks in range(self.max_corks + 1):
            yield from self._with_corks(n, corks)

    def _with_corks(self, n: int, corks: int) -> Iterator[CorollaWithCorks]:
        total = n + corks
        if total == 1:
            yield CorollaWithCorks(
                (Slot.LEAF,) if n else (Slot.CORK,), self.variant
            )
            return
        if total < 2:
            return
        for positions in combinations(range(total), corks):
            slots = tuple(
                Slot.CORK if k in positions else Slot.LEAF
                for k in range(total)
            )
            yield CorollaWithCorks(slots, self.variant)


class UObjects(UinfAObjects):
    """
    Ob(𝒰): the same corollas with black corks u', plus the white unit u.
    """

    name = "Ob(U)"
    variant = ObjectVariant.U

    def _compose(self, a, i, b) -> CorollaWithCorks:
        return U_objects_compose(a, i, b)

    def elements(self, n: int) -> Iterator[CorollaWithCorks]:
        if n == 0:
            yield white_unit()
        yield from super().elements(n)


def white_unit() -> CorollaWithCorks:
    return CorollaWithCorks((Slot.WHITE,), ObjectVariant.U)


### CONVERSION TO COPRODUCT TREES ###


def object_coproduct(variant: ObjectVariant, max_corks: int = 3):
    """
    The coproduct presentation of the operad of objects.
    """
    name = CORK_NAMES[variant]
    generator = Cork(name, filled=(variant == ObjectVariant.U))
    base = (
        UnitalAssOperad() if variant == ObjectVariant.U else AssOperad()
    )
    return CoproductOperad(
        base, (generator,), max_inner=max_corks + 1, name=f"{base.name}∐F"
    )


def corolla_to_tree(x: CorollaWithCorks) -> Tree:
    """
    Canonical coproduct tree of a corolla with corks.
    """
    generator = Cork(CORK_NAMES[x.variant], x.variant == ObjectVariant.U)
    if x.is_identity:
        return BARE
    if x.slots == (Slot.WHITE,):
        return Tree(Vertex((), UNIT))
    if x.slots == (Slot.CORK,):
        return Tree(Vertex((Vertex((), generator),), IDENTITY))

    children = tuple(
        LEAF if slot == Slot.LEAF else Vertex((), generator)
        for slot in x.slots
    )
    return Tree(Vertex(children, MuCorolla(len(children))))


def tree_to_corolla(tree: Tree, variant: ObjectVariant) -> CorollaWithCorks:
    if tree.is_bare:
        return identity_corolla(variant)

    root = tree.root
    if root.label == UNIT:
        return white_unit()
    if root.label == IDENTITY:
        return cork(variant)

    slots: List[Slot] = [
        Slot.LEAF if isinstance(child, Leaf) else Slot.CORK
        for child in root.children
    ]
    return CorollaWithCorks(tuple(slots), variant)


def coproduct_cross_check(
    variant: ObjectVariant, max_arity: int = 3, max_corks: int = 2
) -> Check:
    """
    The corolla rules against composition in the coproduct presentation, on
    every composable pair of the bounded components.
    """
    direct = (
        UObjects(max_corks)
        if variant == ObjectVariant.U
        else UinfAObjects(max_corks)
    )
    coproduct = object_coproduct(variant, max_corks)
    elements = [
        x for n in range(max_arity + 1) for x in direct.elements(n)
    ]

    instances, failures = 0, []
    for x in elements:
        for i in range(1, x.arity + 1):
            for y in elements:
                instances += 1
                expected = direct.compose(x, i, y)
                tree = coproduct.compose(
                    corolla_to_tree(x), i, corolla_to_tree(y)
                )
                if tree != corolla_to_tree(expected) or (
                    tree_to_corolla(tree, variant) != expected
                ):
                    failures.append(f"{x} o_{i} {y}")

    logger.info(
        f"{direct.name} against {coproduct.name}: {instances} compositions, "
        f"{len(failures)} mismatches."
    )
    return Check.from_failures(f"{direct.name}:coproduct", instances, failures)
