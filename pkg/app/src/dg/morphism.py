"""
Morphisms of graded operads given by their values on labels.
"""
from typing import Callable, Iterable, Mapping, Optional

from src.dg.differential import d_generator, differential
from src.dg.element import Element
from src.dg.labels import GradedLabel, Nu
from src.dg.normalize import generator, identity, map_vertices
from src.errors import AmbientError, DegreeError, TruncationError
from src.reports import Check
from src.set_operad.associative import UNIT, Identity, MuCorolla
from src.utils import Ambient, Logging

logger = Logging.get_console_logger()

Rule = Callable[[GradedLabel], Optional[Element]]


class OperadMorphism:
    """
    phi: source -> target, determined by the value on every label.

    `rule` returns the image of a label, or None when the morphism is not
    defined there. Identity pads always go to the identity and the values
    are cached, so rules may be lazy and recursive.
    """

    def __init__(
        self,
        rule: Rule,
        source: Ambient,
        target: Ambient,
        name: str = "phi",
        check_degrees: bool = True,
    ):
        self.rule = rule
        self.source = Ambient(source)
        self.target = Ambient(target)
        self.name = name
        self.check_degrees = check_degrees
        self._cache: dict = {}

    @classmethod
    def from_table(
        cls,
        table: Mapping[GradedLabel, Element],
        source: Ambient,
        target: Ambient,
        name: str = "phi",
        fallback_identity: bool = True,
    ) -> "OperadMorphism":
        """
        Finite assignment; other labels map to themselves when
        `fallback_identity`, and are out of range otherwise.
        """

        def rule(label: GradedLabel) -> Optional[Element]:
            if label in table:
                return table[label]
            if fallback_identity:
                return generator(label, target)
            return None

        return cls(rule, source, target, name)

    def image(self, label: GradedLabel) -> Element:
        """
        phi(label); callers own the returned element.
        """
        return self._image(label).copy()

    def _image(self, label: GradedLabel) -> Element:
        if isinstance(label, Identity):
            return identity(self.target)
        if label in self._cache:
            return self._cache[label]

        value = self.rule(label)
        if value is None:
            raise TruncationError(f"{self.name} is not defined on {label}.")
        if value.ambient != self.target:
            raise AmbientError(
                f"{self.name}({label}) lies in {value.ambient}, "
                f"not in {self.target}."
            )
        if self.check_degrees:
            _check_value(label, value, shift=0)

        self._cache[label] = value
        return value

    def __call__(self, x: Element) -> Element:
        return evaluate_morphism(self, x)

    def __repr__(self) -> str:
        return f"OperadMorphism({self.name}: {self.source} -> {self.target})"


def _check_value(label: GradedLabel, value: Element, shift: int) -> None:
    if value.arity != label.arity:
        raise DegreeError(
            f"Value of arity {value.arity} assigned to {label} of arity "
            f"{label.arity}."
        )
    expected = label.degree + shift
    if value and value.degrees() != [expected]:
        raise DegreeError(
            f"Value of degrees {value.degrees()} assigned to {label}, "
            f"expected {expected}."
        )


def evaluate_morphism(phi: OperadMorphism, x: Element) -> Element:
    """
    phi on every vertex, then composition in the target. Degree 0, so no
    Koszul sign beyond what the substitution itself produces.
    """
    if x.ambient != phi.source:
        raise AmbientError(
            f"{phi.name} is defined on {phi.source}, got {x.ambient}."
        )
    result = Element.zero(x.arity, phi.target)
    for tree, coefficient in x.items():
        image = map_vertices(
            tree, lambda _, label: phi._image(label), phi.target
        )
        result.accumulate(image, coefficient)
    return result


### STANDARD MORPHISMS ###


def identity_morphism(ambient: Ambient) -> OperadMorphism:
    return OperadMorphism(
        lambda label: generator(label, ambient), ambient, ambient, "1"
    )


def resolution_map(source: Ambient = Ambient.UINF_UA) -> OperadMorphism:
    """
    The augmentation onto uAss: mu -> mu, u -> u, nu_1^{1} -> u and every
    other nu to 0. uAss is the nu-free part of the unital ambient.
    """
    target = Ambient.UINF_UA

    def rule(label: GradedLabel) -> Element:
        if isinstance(label, Nu):
            if label == Nu(1, (1,)):
                return generator(UNIT, target)
            return Element.zero(label.arity, target)
        return generator(label, target)

    return OperadMorphism(rule, source, target, "resolution")


def psi_ch() -> OperadMorphism:
    """
    u-infinity A -> u-infinity uA, sending every label to itself.
    """
    return OperadMorphism(
        lambda label: generator(label, Ambient.UINF_UA),
        Ambient.UINF_A,
        Ambient.UINF_UA,
        "psi",
    )


def base_labels(ambient: Ambient, max_arity: int = 3) -> list:
    labels: list = [MuCorolla(k) for k in range(2, max_arity + 1)]
    if Ambient(ambient) == Ambient.UINF_UA:
        labels.append(UNIT)
    return labels


def is_dg_morphism(
    phi: OperadMorphism, generators: Iterable[GradedLabel]
) -> Check:
    """
    phi(d x) = d phi(x) on every listed generator.
    """
    failures = []
    count = 0
    for label in generators:
        count += 1
        left = phi(d_generator(label, phi.source))
        right = differential(phi.image(label))
        if left != right:
            failures.append(f"{label}: phi(dx) = {left}, d(phi x) = {right}")
    logger.info(
        f"{phi.name} against d on {count} generators: "
        f"{len(failures)} failures."
    )
    return Check.from_failures(f"{phi.name}_commutes_with_d", count, failures)
