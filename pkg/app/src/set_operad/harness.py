"""
Brute-force harness for the operad axioms:

(1) (a o_i b) o_j c = (a o_j c) o_(i+r-1) b      for 1 <= j < i
(2) (a o_i b) o_(i+j-1) c = a o_i (b o_j c)
(3) id o_1 a = a
(4) a o_i id = a
"""
import random
from typing import Any, Dict, List, Tuple

from src.reports import AxiomReport, Check
from src.set_operad.base import SetOperad
from src.utils import Logging

logger = Logging.get_console_logger()

MAX_WITNESSES = 20


def _components(
    operad: SetOperad, max_arity: int, element_bound: int, seed: int
) -> Tuple[Dict[int, List[Any]], bool]:
    rng = random.Random(seed)
    components = {}
    exhaustive = True
    for n in range(max_arity + 1):
        elements, complete = operad.component(n, element_bound, rng)
        components[n] = elements
        exhaustive = exhaustive and complete

    return components, exhaustive


def check_axioms(
    operad: SetOperad, max_arity: int, element_bound: int, seed: int = 0
) -> AxiomReport:
    """
    Instantiate the four axioms over every element of arity <= max_arity,
    at most `element_bound` elements per arity (sampled when the component
    is larger), and list the violations with witnesses.
    """
    components, exhaustive = _components(
        operad, max_arity, element_bound, seed
    )
    everything = [
        (n, x) for n in range(max_arity + 1) for x in components[n]
    ]
    fmt = operad.format
    identity = operad.identity

    exchange: List[str] = []
    vertical: List[str] = []
    left_unit: List[str] = []
    right_unit: List[str] = []
    counts = {"exchange": 0, "vertical": 0, "left_unit": 0, "right_unit": 0}

    for p, a in everything:
        counts["left_unit"] += 1
        if operad.compose(identity, 1, a) != a:
            left_unit.append(f"id o_1 {fmt(a)}")
        for i in range(1, p + 1):
            counts["right_unit"] += 1
            if operad.compose(a, i, identity) != a:
                right_unit.append(f"{fmt(a)} o_{i} id")

    for p, a in everything:
        if p == 0:
            continue
        for q, b in everything:
            for i in range(1, p + 1):
                ab = operad.compose(a, i, b)
                for r, c in everything:
                    # vertical: c plugged into b inside a
                    for j in range(1, q + 1):
                        counts["vertical"] += 1
                        left = operad.compose(ab, i + j - 1, c)
                        right = operad.compose(a, i, operad.compose(b, j, c))
                        if left != right and len(vertical) < MAX_WITNESSES:
                            vertical.append(
                                f"a={fmt(a)} i={i} b={fmt(b)} j={j} "
                                f"c={fmt(c)}: {fmt(left)} != {fmt(right)}"
                            )
                    # horizontal: c in an earlier slot of a
                    for j in range(1, i):
                        counts["exchange"] += 1
                        left = operad.compose(ab, j, c)
                        right = operad.compose(
                            operad.compose(a, j, c), i + r - 1, b
                        )
                        if left != right and len(exchange) < MAX_WITNESSES:
                            exchange.append(
                                f"a={fmt(a)} i={i} b={fmt(b)} j={j} "
                                f"c={fmt(c)}: {fmt(left)} != {fmt(right)}"
                            )

    checks = [
        Check.from_failures("exchange", counts["exchange"], exchange),
        Check.from_failures("vertical", counts["vertical"], vertical),
        Check.from_failures("left_unit", counts["left_unit"], left_unit),
        Check.from_failures("right_unit", counts["right_unit"], right_unit),
    ]
    vacuous = not everything
    logger.info(
        f"Axioms of {operad.name} up to arity {max_arity}: "
        f"{sum(counts.values())} instances, "
        f"{sum(len(c.failures) for c in checks)} violations."
    )

    return AxiomReport(
        operad=operad.name,
        max_arity=max_arity,
        element_bound=element_bound,
        exhaustive=exhaustive,
        vacuous=vacuous,
        checks=checks,
        passed=all(check.passed for check in checks),
    )
