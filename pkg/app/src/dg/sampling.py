"""
Seeded random elements for the property sweeps.
"""
import random
from typing import List, Optional, Tuple

from src.dg.element import Element
from src.dg.labels import GradedLabel, generators
from src.dg.normalize import compose, generator
from src.set_operad.associative import UNIT, MuCorolla
from src.utils import Ambient


def label_pool(
    ambient: Ambient,
    max_weight: int,
    max_level: Optional[int] = None,
    max_n: Optional[int] = None,
) -> List[GradedLabel]:
    """
    Labels a random composite is built from: mu, mu^2, u when available,
    and the nu_n^S with n + |S| <= max_weight.
    """
    pool: List[GradedLabel] = [MuCorolla(2), MuCorolla(3)]
    if Ambient(ambient) == Ambient.UINF_UA:
        pool.append(UNIT)
    for nu in generators(max_weight):
        if max_level is not None and nu.level > max_level:
            continue
        if max_n is not None and nu.n > max_n:
            continue
        pool.append(nu)
    return pool


def random_composite(
    rng: random.Random,
    ambient: Ambient,
    pool: List[GradedLabel],
    max_labels: int = 3,
    max_arity: int = 5,
) -> Element:
    """
    A signed basis tree: a random label with up to `max_labels - 1` more
    grafted into random slots while the arity stays <= max_arity.
    """
    openers = [label for label in pool if label.arity >= 1]
    x = generator(rng.choice(openers), ambient)
    for _ in range(rng.randint(0, max_labels - 1)):
        if x.arity == 0:
            break
        label = rng.choice(pool)
        if x.arity + label.arity - 1 > max_arity:
            continue
        x = compose(x, rng.randint(1, x.arity), generator(label, ambient))
    return x


def random_composites(
    seed: int,
    count: int,
    ambient: Ambient,
    pool: List[GradedLabel],
    max_labels: int = 3,
) -> List[Element]:
    rng = random.Random(seed)
    return [
        random_composite(rng, ambient, pool, max_labels)
        for _ in range(count)
    ]


def random_pair(
    rng: random.Random, ambient: Ambient, pool: List[GradedLabel]
) -> Tuple[Element, int, Element]:
    """
    (x, i, y) with x of positive arity.
    """
    x = random_composite(rng, ambient, pool, max_labels=2)
    while x.arity == 0:
        x = random_composite(rng, ambient, pool, max_labels=2)
    y = random_composite(rng, ambient, pool, max_labels=2)
    return x, rng.randint(1, x.arity), y
