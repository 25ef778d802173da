"""
The differential of the u-infinity operads on generators and its unique
extension as a degree -1 derivation.
"""
from functools import lru_cache
from typing import Iterable, List

from src.dg.element import Element
from src.dg.labels import MU, GradedLabel, Nu
from src.dg.normalize import (
    compose_labels,
    corolla_of,
    degree_before,
    generator,
    identity,
    substitute,
)
from src.dg.subsets import boundaries, split, subset_circ
from src.errors import FiltrationError
from src.utils import Ambient, Logging, sign

logger = Logging.get_console_logger()


def _quadratic_pairs(n: int, S: Iterable[int]):
    """
    Every (p, S1, i, q, S2, r) with p + q = n + 1, S1, S2 non-empty and
    S1 o_i S2 = S.
    """
    from itertools import combinations

    S = tuple(S)
    target = set(S)
    for p in range(1, n + 1):
        q = n + 1 - p
        for size1 in range(1, len(S)):
            size2 = len(S) - size1
            if size1 > p - 1 or size2 > q:
                continue
            for S1 in combinations(range(1, p + 1), size1):
                for S2 in combinations(range(1, q + 1), size2):
                    for i in range(1, p - size1 + 1):
                        r, result = subset_circ(S1, p, i, S2, q)
                        if set(result) == target:
                            yield p, S1, i, q, S2, r


def d_generator(label: GradedLabel, ambient: Ambient) -> Element:
    """
    d on a single label; zero on mu, u, id and nu_1^{1}. Callers own the
    returned element.
    """
    return _d_generator(label, Ambient(ambient)).copy()


@lru_cache(maxsize=None)
def _d_generator(label: GradedLabel, ambient: Ambient) -> Element:
    if not isinstance(label, Nu):
        generator(label, ambient)
        return Element.zero(label.arity, ambient)

    n, S = label.n, label.S
    s = len(S)
    result = Element.zero(label.arity, ambient)

    if n == 1:
        return result

    if n == 2 and s == 1:
        result.accumulate(compose_labels(MU, S[0], Nu(1, (1,)), ambient))
        result.accumulate(identity(ambient), -1)
        return result

    # mu o_1 nu_(n-1)^S unless n is in S
    if n not in S:
        result.accumulate(
            compose_labels(MU, 1, Nu(n - 1, S), ambient), sign(n)
        )

    # mu o_2 nu_(n-1)^(S-1) unless 1 is in S
    if 1 not in S:
        shifted = Nu(n - 1, tuple(k - 1 for k in S))
        result.accumulate(compose_labels(MU, 2, shifted, ambient))

    # nu_(n-1)^(S_v ∪ (S'_v - 1)) o_i mu between consecutive elements of S
    bounds = boundaries(S, n)
    for v in range(1, s + 2):
        kept, moved = split(S, v)
        subset = tuple(sorted(kept | {k - 1 for k in moved}))
        low, high = bounds[v - 1], bounds[v]
        for i in range(1, n - s):
            if low < i + v - 1 < high - 1:
                result.accumulate(
                    compose_labels(Nu(n - 1, subset), i, MU, ambient),
                    sign(i + v - 1),
                )

    for p, S1, i, q, S2, r in _quadratic_pairs(n, S):
        exponent = q * (p - len(S1)) + (q - 1) * (i + r - 1)
        exponent += len(S2) * (r - 1)
        result.accumulate(
            compose_labels(Nu(p, S1), i, Nu(q, S2), ambient), sign(exponent)
        )

    logger.debug(f"d({label}) has {len(result)} terms in {ambient}.")
    return result


def differential(x: Element) -> Element:
    """
    d(T) = sum over vertices v of (-1)^(degrees before v) T with v
    replaced by d(label of v).
    """
    ambient = x.ambient
    result = Element.zero(x.arity, ambient)
    for tree, coefficient in x.items():
        if tree.is_bare:
            continue
        vertices = [vertex for _, vertex in tree.vertices()]
        own = _own_images(tree, ambient)
        for k, vertex in enumerate(vertices):
            if not isinstance(vertex.label, Nu):
                continue
            image = _d_generator(vertex.label, ambient)
            if image.is_zero():
                continue
            images = own[:k] + [image] + own[k + 1 :]
            result.accumulate(
                substitute(tree, images),
                coefficient * sign(degree_before(tree, k)),
            )
    return result


@lru_cache(maxsize=None)
def _own_image(label: GradedLabel, ambient: Ambient) -> Element:
    """
    The raw corolla of a label as a one-term element; the identity label
    gives the bare tree.
    """
    return Element.basis(corolla_of(label), Ambient(ambient))


def _own_images(tree, ambient: Ambient) -> List[Element]:
    """
    Raw corollas of the vertices of a tree, in preorder; shared cached
    values, read only.
    """
    return [
        _own_image(vertex.label, ambient) for _, vertex in tree.vertices()
    ]


def in_filtration(x: Element, m: int) -> bool:
    """
    True when every nu-vertex of every term has |S| <= m.
    """
    return x.level() <= m


def check_filtration(x: Element, m: int) -> None:
    if not in_filtration(x, m):
        raise FiltrationError(
            f"{x} has a generator of level {x.level()} > {m}."
        )
