"""
Operads in groupoids with contractible components.

Such an operad is determined by its Set-operad of objects: there is exactly
one morphism between two objects of the same arity, written as the pair
(source, target). Operadic composition of morphisms is composition of
sources and of targets.
"""
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, Iterable, List, Set, Tuple

from src.errors import ArityError
from src.reports import Check, GenerationRow
from src.set_operad import (
    IDENTITY,
    UNIT,
    AssOperad,
    CorollaWithCorks,
    ObjectVariant,
    SetOperad,
    Slot,
    UinfAObjects,
    UnitalAssOperad,
    UObjects,
)
from src.set_operad.corks import (
    cork,
    identity_corolla,
    mu_corolla,
    white_unit,
)
from src.utils import Logging

logger = Logging.get_console_logger()

Morphism = Tuple[Any, Any]


class ContractibleGroupoidOperad:
    """
    Levelwise contractible groupoid operad over a Set-operad of objects.
    """

    def __init__(self, objects: SetOperad):
        self.objects = objects
        self.name = f"Grpd[{objects.name}]"

    def unique_morphism(self, x: Any, y: Any, n: int = None) -> Morphism:
        """
        The morphism x -> y; both ends must sit in the same component.
        """
        arity = self.objects.arity(x)
        if arity != self.objects.arity(y) or (n is not None and n != arity):
            raise ArityError(
                f"{x} and {y} are not in the same component"
                + (f" of arity {n}." if n is not None else ".")
            )
        return (x, y)

    def identity_morphism(self, x: Any) -> Morphism:
        return (x, x)

    def then(self, first: Morphism, second: Morphism) -> Morphism:
        """
        Groupoid composition second ∘ first.
        """
        if first[1] != second[0]:
            raise ArityError(f"{first} and {second} are not composable.")
        return (first[0], second[1])

    def inverse(self, morphism: Morphism) -> Morphism:
        return (morphism[1], morphism[0])

    def compose(self, f: Morphism, i: int, g: Morphism) -> Morphism:
        """
        Operadic composition f o_i g.
        """
        return (
            self.objects.compose(f[0], i, g[0]),
            self.objects.compose(f[1], i, g[1]),
        )

    def format(self, morphism: Morphism) -> str:
        fmt = self.objects.format
        return f"({fmt(morphism[0])} -> {fmt(morphism[1])})"


### GENERATION ###


class _Components:
    """
    Union-find over objects; reached morphism pairs are the pairs of objects
    in the same class.
    """

    def __init__(self):
        self.parent: Dict[Any, Any] = {}

    def add(self, x: Any) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: Any) -> Any:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Any, y: Any) -> bool:
        root_x, root_y = self.find(x), self.find(y)
        if root_x == root_y:
            return False
        self.parent[root_y] = root_x
        return True


@dataclass
class GenerationState:
    """
    Objects and morphisms reached from the generators.

    `reached_objects` grows by breadth-first composition of objects; the
    reached morphisms are tracked as the classes of the equivalence relation
    they generate, which is exactly the set of reached pairs once the
    closure is closed under groupoid composition and inverses.
    """

    max_arity: int
    max_corks: int
    reached_objects: Dict[int, List[Any]] = field(default_factory=dict)
    frontier: List[Morphism] = field(default_factory=list)
    components: _Components = field(default_factory=_Components)

    def within_bounds(self, x: CorollaWithCorks) -> bool:
        return x.arity <= self.max_arity and x.cork_count <= self.max_corks

    def objects(self) -> Iterable[Any]:
        for n in sorted(self.reached_objects):
            yield from self.reached_objects[n]

    def add_object(self, x: Any) -> None:
        if not self.has_object(x):
            self.reached_objects.setdefault(x.arity, []).append(x)
            self.components.add(x)

    def has_object(self, x: Any) -> bool:
        return x in self.components.parent

    def connected(self, x: Any, y: Any) -> bool:
        if not (self.has_object(x) and self.has_object(y)):
            return False
        return self.components.find(x) == self.components.find(y)


def _close_objects(
    operad: SetOperad, state: GenerationState, generators: Iterable[Any]
) -> None:
    seen: Set[Any] = set()
    queue = deque()

    def reach(x: Any) -> None:
        if x in seen or not state.within_bounds(x):
            return
        seen.add(x)
        queue.append(x)
        state.add_object(x)

    reach(operad.identity)
    for generator in generators:
        reach(generator)

    while queue:
        x = queue.popleft()
        for y in list(seen):
            for a, b in ((x, y), (y, x)):
                for i in range(1, a.arity + 1):
                    reach(operad.compose(a, i, b))


def _close_morphisms(
    groupoid: ContractibleGroupoidOperad,
    state: GenerationState,
    generators: Iterable[Morphism],
) -> None:
    """
    Every reached morphism is a groupoid composite of whiskerings
    z o_j f and f o_i z of generating morphisms f by objects z, so it is
    enough to whisker the morphisms that merged two classes.
    """
    queue = deque()
    objects = list(state.objects())

    def reach(morphism: Morphism) -> None:
        x, y = morphism
        if not (state.within_bounds(x) and state.within_bounds(y)):
            return
        state.add_object(x)
        state.add_object(y)
        if state.components.union(x, y):
            queue.append(morphism)
            state.frontier.append(morphism)

    for generator in generators:
        reach(generator)

    while queue:
        morphism = queue.popleft()
        source = morphism[0]
        for z in objects:
            for j in range(1, z.arity + 1):
                whisker = groupoid.identity_morphism(z)
                reach(groupoid.compose(whisker, j, morphism))
            for i in range(1, source.arity + 1):
                whisker = groupoid.identity_morphism(z)
                reach(groupoid.compose(morphism, i, whisker))


def generation_closure(
    gens_objects: Iterable[Any],
    gens_morphisms: Iterable[Morphism],
    max_arity: int,
    max_corks: int,
) -> GenerationState:
    """
    Close the generating objects and morphisms of u∞A^Grd under o_i,
    groupoid composition and inverses, keeping objects within the bounds.
    """
    operad = UinfAObjects(max_corks)
    groupoid = ContractibleGroupoidOperad(operad)
    state = GenerationState(max_arity=max_arity, max_corks=max_corks)

    _close_objects(operad, state, gens_objects)
    _close_morphisms(groupoid, state, gens_morphisms)

    logger.info(
        f"Generation closure: "
        f"{sum(len(v) for v in state.reached_objects.values())} objects,"
        f" {len(state.frontier)} spanning morphisms."
    )
    return state


def uinfA_generators() -> Tuple[List[CorollaWithCorks], List[Morphism]]:
    """
    The objects mu, u and the isomorphisms lambda = (mu(u,id) -> |) and
    rho = (mu(id,u) -> |).
    """
    variant = ObjectVariant.UINF_A
    mu = mu_corolla(2, variant)
    u = cork(variant)
    identity = identity_corolla(variant)
    lam = (CorollaWithCorks((Slot.CORK, Slot.LEAF), variant), identity)
    rho = (CorollaWithCorks((Slot.LEAF, Slot.CORK), variant), identity)
    return [mu, u], [lam, rho]


def generation_rows(
    state: GenerationState,
) -> Tuple[List[GenerationRow], List[str]]:
    """
    Reached counts per (arity, cork count) against the full bounded
    components, and the objects or classes that were missed.
    """
    operad = UinfAObjects(state.max_corks)
    rows = []
    missing: List[str] = []

    for n in range(state.max_arity + 1):
        component = list(operad.elements(n))
        by_corks: Dict[int, List[CorollaWithCorks]] = {}
        for x in component:
            by_corks.setdefault(x.cork_count, []).append(x)

        for corks, objects in sorted(by_corks.items()):
            reached = [x for x in objects if state.has_object(x)]
            missing.extend(str(x) for x in objects if not state.has_object(x))
            pairs = [
                (x, y)
                for x, y in product(objects, component)
                if state.connected(x, y)
            ]
            rows.append(
                GenerationRow(
                    arity=n,
                    corks=corks,
                    objects=len(objects),
                    reached_objects=len(reached),
                    morphism_pairs=len(objects) * len(component),
                    reached_pairs=len(pairs),
                )
            )

        if component and not all(
            state.connected(component[0], x) for x in component
        ):
            missing.append(f"morphisms of arity {n}")

    return rows, missing


def cork_deletion_path(x: CorollaWithCorks) -> List[CorollaWithCorks]:
    """
    Delete the corks of x one at a time, leftmost first, down to a
    cork-free corolla (or to u in arity 0). Each step is a whiskering of
    lambda or rho.
    """
    path = [x]
    current = x
    while current.cork_count and len(current.slots) > 1:
        position = current.slots.index(Slot.CORK)
        slots = current.slots[:position] + current.slots[position + 1 :]
        current = CorollaWithCorks(slots, current.variant)
        path.append(current)

    return path


### PUSH-OUT SQUARES ON OBJECTS ###


def ob_phi_bar(label) -> CorollaWithCorks:
    """
    Ass -> Ob(u∞A^Grd), mu^(n-1) to the cork-free corolla.
    """
    return mu_corolla(label.arity, ObjectVariant.UINF_A)


def ob_phi(label) -> CorollaWithCorks:
    """
    uAss -> Ob(𝒰), the white unit for u.
    """
    if label == UNIT:
        return white_unit()
    return mu_corolla(label.arity, ObjectVariant.U)


def ob_phi_grd(label):
    """
    Ass -> uAss, the inclusion.
    """
    return label


def ob_psi(x: CorollaWithCorks) -> CorollaWithCorks:
    """
    Ob(u∞A^Grd) -> Ob(𝒰): black corks u go to black corks u'.
    """
    return CorollaWithCorks(x.slots, ObjectVariant.U)


def _morphism_failures(
    source: SetOperad,
    target: SetOperad,
    mapping: Callable[[Any], Any],
    max_arity: int,
) -> Tuple[int, List[str]]:
    """
    Check mapping(a o_i b) = mapping(a) o_i mapping(b) on bounded components.
    """
    failures = []
    instances = 0
    everything = [
        x for n in range(max_arity + 1) for x in source.elements(n)
    ]
    for a in everything:
        for b in everything:
            for i in range(1, source.arity(a) + 1):
                instances += 1
                left = mapping(source.compose(a, i, b))
                right = target.compose(mapping(a), i, mapping(b))
                if left != right:
                    failures.append(f"{a} o_{i} {b}: {left} != {right}")
    if mapping(source.identity) != target.identity:
        failures.append("identity not preserved")

    return instances, failures


def pushout_square_object_check(max_arity: int, max_corks: int) -> List[Check]:
    """
    Object-level content of the two push-out squares:

    - the square Ass -> Ob(u∞A^Grd), uAss -> Ob(𝒰) commutes;
    - Ob(psi) is a bijection in positive arities and misses only u in
      arity 0;
    - the square of free operads on e, e' commutes with zeta(e) = u,
      zeta'(e) = u, zeta'(e') = u';
    - Ob(𝒰) is generated by the images of uAss and u';
    - the relations between lambda, rho and (u' -> u) hold in 𝒰.
    """
    uinf_a = UinfAObjects(max_corks)
    u_objects = UObjects(max_corks)
    ass = AssOperad(max_arity)
    uass = UnitalAssOperad(max_arity)
    checks = []

    # commutativity psi . phi_bar = phi . phi_grd on Ass
    failures = []
    count = 0
    for n in range(1, max_arity + 1):
        for label in ass.elements(n):
            count += 1
            left = ob_psi(ob_phi_bar(label))
            right = ob_phi(ob_phi_grd(label))
            if left != right:
                failures.append(f"{label}: {left} != {right}")
    checks.append(Check.from_failures("square_commutes", count, failures))

    # the four maps are operad morphisms
    for name, source, target, mapping in (
        ("phi_grd_morphism", ass, uass, ob_phi_grd),
        ("phi_bar_morphism", ass, uinf_a, ob_phi_bar),
        ("phi_morphism", uass, u_objects, ob_phi),
        ("psi_morphism", uinf_a, u_objects, ob_psi),
    ):
        instances, failures = _morphism_failures(
            source, target, mapping, max_arity
        )
        checks.append(Check.from_failures(name, instances, failures))

    # psi bijective in positive arity, misses exactly u in arity 0
    failures = []
    count = 0
    for n in range(max_arity + 1):
        image = [ob_psi(x) for x in uinf_a.elements(n)]
        target = list(u_objects.elements(n))
        count += len(target)
        if len(set(image)) != len(image):
            failures.append(f"psi not injective in arity {n}")
        complement = set(target) - set(image)
        expected = {white_unit()} if n == 0 else set()
        if complement != expected:
            failures.append(
                f"arity {n} complement {sorted(map(str, complement))}"
            )
    checks.append(Check.from_failures("psi_bijective", count, failures))

    # zeta and zeta' on the free operads on e and on e, e'
    zeta = {"|": IDENTITY, "e": UNIT}
    zeta_prime = {
        "|": identity_corolla(ObjectVariant.U),
        "e": white_unit(),
        "e'": cork(ObjectVariant.U),
    }
    failures = [
        f"{x}: {ob_phi(zeta[x])} != {zeta_prime[x]}"
        for x in zeta
        if ob_phi(zeta[x]) != zeta_prime[x]
    ]
    checks.append(Check.from_failures("free_square_commutes", 2, failures))

    # Ob(U) generated by phi(uAss) and u'
    state = GenerationState(max_arity=max_arity, max_corks=max_corks)
    seeds = [
        ob_phi(label)
        for n in range(max_arity + 1)
        for label in uass.elements(n)
    ]
    _close_objects(u_objects, state, seeds + [cork(ObjectVariant.U)])
    failures = []
    count = 0
    for n in range(max_arity + 1):
        for x in u_objects.elements(n):
            count += 1
            if not state.has_object(x):
                failures.append(str(x))
    checks.append(Check.from_failures("jointly_generated", count, failures))

    checks.append(_relation_replay())
    return checks


def _relation_replay() -> Check:
    """
    In 𝒰: (mu(u',id) -> id) o_1 (u -> u) = (u' -> u), and
    mu o_1 (u' -> u) = lambda, mu o_2 (u' -> u) = rho.
    """
    variant = ObjectVariant.U
    groupoid = ContractibleGroupoidOperad(UObjects(3))
    identity = identity_corolla(variant)
    mu = groupoid.identity_morphism(mu_corolla(2, variant))
    u_prime_to_u = groupoid.unique_morphism(cork(variant), white_unit())
    lam = (CorollaWithCorks((Slot.CORK, Slot.LEAF), variant), identity)
    rho = (CorollaWithCorks((Slot.LEAF, Slot.CORK), variant), identity)
    u = groupoid.identity_morphism(white_unit())

    failures = []
    if groupoid.compose(lam, 1, u) != u_prime_to_u:
        failures.append("lambda o_1 u != (u' -> u)")
    if groupoid.compose(rho, 1, u) != u_prime_to_u:
        failures.append("rho o_1 u != (u' -> u)")
    if groupoid.compose(mu, 1, u_prime_to_u) != lam:
        failures.append("mu o_1 (u' -> u) != lambda")
    if groupoid.compose(mu, 2, u_prime_to_u) != rho:
        failures.append("mu o_2 (u' -> u) != rho")

    return Check.from_failures("relations_in_U", 4, failures)
