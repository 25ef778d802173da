"""
Relative derivations, relative homotopies and the strong deformation
retractions collapsing u_m uA onto u_(m-1) uA.

A relative (f, g)-derivation h of degree +1 vanishes on the base and on a
tree with vertices x_1, ..., x_K (preorder) is

    h(T) = sum_k (-1)^(|x_1| + ... + |x_(k-1)|)
           T(f(x_1), ..., f(x_(k-1)), h(x_k), g(x_(k+1)), ..., g(x_K)),

which is the root decomposition formula applied recursively.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from src.dg.differential import d_generator, differential, in_filtration
from src.dg.element import Element
from src.dg.labels import GradedLabel, Nu, level_generators
from src.dg.morphism import (
    OperadMorphism,
    base_labels,
    identity_morphism,
)
from src.dg.normalize import compose, degree_before, generator, substitute
from src.dg.sampling import label_pool, random_composites
from src.errors import (
    DegreeError,
    FiltrationError,
    HypothesisError,
    TruncationError,
)
from src.reports import Check, SDRRow
from src.set_operad.associative import UNIT
from src.utils import Ambient, Logging, sign

logger = Logging.get_console_logger()

Hbar = Callable[[GradedLabel], Element]
InBase = Callable[[GradedLabel], bool]


def not_free(label: GradedLabel) -> bool:
    return not isinstance(label, Nu)


class RelativeDerivation:
    """
    The unique relative (f, g)-derivation extending `hbar` from the
    generators outside the base.
    """

    def __init__(
        self,
        f: OperadMorphism,
        g: OperadMorphism,
        hbar: Hbar,
        in_base: InBase = not_free,
        name: str = "h",
    ):
        if f.source != g.source or f.target != g.target:
            raise HypothesisError("f and g must share source and target.")
        for label in base_labels(f.source):
            if f.image(label) != g.image(label):
                raise HypothesisError(f"f and g differ on {label}.")

        self.f = f
        self.g = g
        self.hbar = hbar
        self.in_base = in_base
        self.name = name
        self.ambient = f.target
        self._cache: Dict[GradedLabel, Element] = {}

    def on_label(self, label: GradedLabel) -> Element:
        if self.in_base(label):
            return Element.zero(label.arity, self.ambient)
        if label in self._cache:
            return self._cache[label]

        value = self.hbar(label)
        if value is None:
            raise TruncationError(f"{self.name} is not defined on {label}.")
        if value.arity != label.arity or (
            value and value.degrees() != [label.degree + 1]
        ):
            raise DegreeError(
                f"{self.name}({label}) = {value} does not have arity "
                f"{label.arity} and degree {label.degree + 1}."
            )
        self._cache[label] = value
        return value

    def __call__(self, x: Element) -> Element:
        result = Element.zero(x.arity, self.ambient)
        for tree, coefficient in x.items():
            if tree.is_bare:
                continue
            labels = [vertex.label for _, vertex in tree.vertices()]
            for k, label in enumerate(labels):
                value = self.on_label(label)
                if value.is_zero():
                    continue
                images = (
                    [self.f.image(y) for y in labels[:k]]
                    + [value]
                    + [self.g.image(y) for y in labels[k + 1 :]]
                )
                result.accumulate(
                    substitute(tree, images),
                    coefficient * sign(degree_before(tree, k)),
                )
        return result


def extend_relative_derivation(
    f: OperadMorphism,
    g: OperadMorphism,
    hbar: Hbar,
    in_base: InBase = not_free,
) -> RelativeDerivation:
    return RelativeDerivation(f, g, hbar, in_base)


def homotopy_residual(
    f: OperadMorphism, g: OperadMorphism, h: RelativeDerivation, x: Element
) -> Element:
    """
    f(x) - g(x) - d h(x) - h d(x), zero when the homotopy equation holds.
    """
    return f(x) - g(x) - differential(h(x)) - h(differential(x))


def check_homotopy(
    f: OperadMorphism,
    g: OperadMorphism,
    h: RelativeDerivation,
    generators: Sequence[GradedLabel],
    samples: Sequence[Element] = (),
    name: str = "homotopy",
) -> List[Check]:
    """
    f - g = dh + hd on each generator and on each sample element.
    """
    checks = []
    for title, elements in (
        (
            f"{name}_on_generators",
            [generator(label, f.source) for label in generators],
        ),
        (f"{name}_on_composites", list(samples)),
    ):
        failures = []
        for x in elements:
            residual = homotopy_residual(f, g, h, x)
            if residual:
                failures.append(f"{x}: residual {residual}")
        checks.append(Check.from_failures(title, len(elements), failures))
    return checks


def deform(
    g: OperadMorphism,
    hbar: Hbar,
    rank: Callable[[GradedLabel], int],
    in_base: InBase = not_free,
) -> Tuple[OperadMorphism, RelativeDerivation]:
    """
    The pair (f, h) with h a relative homotopy f => g extending hbar:
    f = g on the base and f(x) = g(x) + d hbar(x) + h d(x) on the other
    generators, computed lazily by induction on `rank`. Raises
    FiltrationError when d(x) involves a non-base generator of rank not
    below rank(x).
    """
    pending = set()

    def rule(label: GradedLabel) -> Element:
        if in_base(label):
            return g.image(label)
        if label in pending:
            raise FiltrationError(f"f({label}) depends on itself.")

        boundary = d_generator(label, g.source)
        for y in boundary.labels():
            if not in_base(y) and rank(y) >= rank(label):
                raise FiltrationError(
                    f"d({label}) involves {y} of rank {rank(y)} >= "
                    f"{rank(label)}."
                )

        pending.add(label)
        try:
            value = g.image(label) + differential(h.on_label(label))
            value = value + h(boundary)
        finally:
            pending.discard(label)
        logger.debug(f"f({label}) = {value}")
        return value

    f = OperadMorphism(rule, g.source, g.target, "f")
    h = extend_relative_derivation(f, g, hbar, in_base)
    return f, h


### COLLAPSING u_m uA ###


def gordo_h(nu: Nu, m: Optional[int] = None) -> Element:
    """
    h(nu_n^S) = (-1)^(min S) nu_(n+1)^(S+1) o_(min S) u.
    """
    if m is not None and nu.level != m:
        raise FiltrationError(f"{nu} is not a generator of level {m}.")

    ambient = Ambient.UINF_UA
    first = nu.S[0]
    lifted = Nu(nu.n + 1, tuple(s + 1 for s in nu.S))
    value = compose(
        generator(lifted, ambient), first, generator(UNIT, ambient)
    )
    return value.scale(sign(first))


def level_base(m: int) -> InBase:
    """
    Labels of u_(m-1) uA.
    """
    return lambda label: not isinstance(label, Nu) or label.level < m


@dataclass
class SDR:
    """
    Strong deformation retraction of u_m uA onto u_(m-1) uA: the inclusion
    l, the retraction r (the corestriction of f = l r) and the homotopy
    h: l r => 1.
    """

    m: int
    max_n: int
    inclusion: OperadMorphism
    retraction: OperadMorphism
    homotopy: RelativeDerivation
    rows: List[SDRRow] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def build_sdr(
    m: int, max_n: int, samples: int = 100, seed: int = 0
) -> SDR:
    """
    Deform the identity of u_m uA along gordo_h with rank(nu_n^S) = n and
    verify the retraction on every level-m generator with n <= max_n.
    """
    if m < 1:
        raise FiltrationError(f"Level must be at least 1, got {m}.")

    ambient = Ambient.UINF_UA
    in_base = level_base(m)
    one = identity_morphism(ambient)
    f, h = deform(
        one, lambda nu: gordo_h(nu, m), lambda nu: nu.n, in_base
    )
    logger.info(f"Retraction of level {m}, generators up to n = {max_n}.")

    rows = []
    top = list(level_generators(m, max_n))
    for nu in top:
        x = generator(nu, ambient)
        value = f.image(nu)
        residual = homotopy_residual(f, one, h, x)
        rows.append(
            SDRRow(
                generator=str(nu),
                f_value=str(value),
                homotopy_residual_zero=residual.is_zero(),
                in_lower_level=in_filtration(value, m - 1),
                no_top_level_terms=all(
                    label.level != m
                    for label in value.labels()
                    if isinstance(label, Nu)
                ),
                commutes_with_d=f(d_generator(nu, ambient))
                == differential(value),
                retracts_to_itself=f(value) == value,
            )
        )

    lower = [
        nu
        for level in range(1, m)
        for nu in level_generators(level, max_n)
    ] + base_labels(ambient)
    retract_failures = [
        f"r(l({label})) = {f.image(label)}"
        for label in lower
        if f.image(label) != generator(label, ambient)
    ]

    pool = label_pool(ambient, max_weight=max_n + m, max_level=m, max_n=max_n)
    sample_elements = random_composites(seed, samples, ambient, pool, 2)

    checks = [
        Check.from_failures(
            "homotopy_on_generators",
            len(rows),
            [r.generator for r in rows if not r.homotopy_residual_zero],
        ),
        Check.from_failures(
            "image_in_lower_level",
            len(rows),
            [r.generator for r in rows if not r.in_lower_level],
        ),
        Check.from_failures(
            "no_top_level_terms",
            len(rows),
            [r.generator for r in rows if not r.no_top_level_terms],
        ),
        Check.from_failures(
            "f_commutes_with_d",
            len(rows),
            [r.generator for r in rows if not r.commutes_with_d],
        ),
        Check.from_failures(
            "f_idempotent",
            len(rows),
            [r.generator for r in rows if not r.retracts_to_itself],
        ),
        Check.from_failures("r_l_identity", len(lower), retract_failures),
        check_homotopy(f, one, h, [], sample_elements)[1],
    ]

    return SDR(
        m=m,
        max_n=max_n,
        inclusion=one,
        retraction=f,
        homotopy=h,
        rows=rows,
        checks=checks,
    )


def augmentation(label: GradedLabel) -> Element:
    """
    u-infinity uA -> uAss: mu -> mu, u -> u, nu_1^{1} -> u, other nu -> 0.
    """
    ambient = Ambient.UINF_UA
    if isinstance(label, Nu):
        if label == Nu(1, (1,)):
            return generator(UNIT, ambient)
        return Element.zero(label.arity, ambient)
    return generator(label, ambient)


def collapse_to_uass(
    max_m: int, max_n: int, sdrs: Optional[Dict[int, SDR]] = None
) -> Check:
    """
    r_1 r_2 ... r_M on every generator of level <= M with n <= max_n
    equals the augmentation.
    """
    if sdrs is None:
        sdrs = {
            m: build_sdr(m, max_n, samples=0) for m in range(1, max_m + 1)
        }

    ambient = Ambient.UINF_UA
    labels: List[GradedLabel] = base_labels(ambient)
    for level in range(1, max_m + 1):
        labels.extend(level_generators(level, max_n))

    failures = []
    for label in labels:
        value = generator(label, ambient)
        for m in range(max_m, 0, -1):
            value = sdrs[m].retraction(value)
        expected = augmentation(label)
        if value != expected:
            failures.append(f"{label}: {value} != {expected}")

    logger.info(
        f"Composite retraction to uAss on {len(labels)} labels: "
        f"{len(failures)} mismatches."
    )
    return Check.from_failures("collapse_to_uass", len(labels), failures)
