"""
Endomorphism operads of finite sets, the monoid census and the unit
transfer argument replayed in them.
"""
import random
from dataclasses import dataclass
from itertools import product
from typing import Any, Iterator, List, Optional, Tuple

from src.errors import ArityError, CarrierTooLarge, HypothesisError
from src.reports import MonoidCensus, UnitTransfer
from src.set_operad.base import SetOperad
from src.utils import Logging

logger = Logging.get_console_logger()

MAX_CENSUS_SIZE = 4


@dataclass(frozen=True, slots=True)
class Operation:
    """
    A function X^n -> X on X = {0, ..., size - 1}, tabulated on the
    argument tuples in lexicographic order.
    """

    size: int
    arity: int
    table: Tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.size**self.arity:
            raise ArityError(
                f"Table of length {len(self.table)} for an operation of "
                f"arity {self.arity} on {self.size} elements."
            )

    def index(self, args: Tuple[int, ...]) -> int:
        position = 0
        for arg in args:
            position = position * self.size + arg
        return position

    def __call__(self, *args: int) -> int:
        return self.table[self.index(args)]

    def __str__(self) -> str:
        values = "".join(str(value) for value in self.table)
        return f"f{self.arity}[{values}]"


def constant(size: int, value: int) -> Operation:
    return Operation(size, 0, (value,))


def binary(size: int, rows: List[List[int]]) -> Operation:
    """
    Binary operation from its multiplication table.
    """
    return Operation(size, 2, tuple(value for row in rows for value in row))


class FiniteEndOperad(SetOperad):
    """
    End(X) for a finite set X: component n is every function X^n -> X.
    """

    def __init__(self, size: int):
        if size < 1:
            raise ArityError("End(X) needs a non-empty carrier.")
        self.size = size
        self.name = f"End({size})"

    @property
    def identity(self) -> Operation:
        return Operation(self.size, 1, tuple(range(self.size)))

    def arity(self, x: Operation) -> int:
        return x.arity

    def _compose(self, a: Operation, i: int, b: Operation) -> Operation:
        p, q = a.arity, b.arity
        table = []
        for args in product(range(self.size), repeat=p + q - 1):
            inner = b(*args[i - 1 : i - 1 + q])
            table.append(a(*args[: i - 1], inner, *args[i - 1 + q :]))
        return Operation(self.size, p + q - 1, tuple(table))

    def elements(self, n: int) -> Iterator[Operation]:
        for table in product(range(self.size), repeat=self.size**n):
            yield Operation(self.size, n, table)

    def component_size(self, n: int) -> Optional[int]:
        return self.size ** (self.size**n)

    def random_element(self, n: int, rng: random.Random) -> Operation:
        table = tuple(
            rng.randrange(self.size) for _ in range(self.size**n)
        )
        return Operation(self.size, n, table)


### MONOID CENSUS ###


def two_sided_units(table: List[List[int]]) -> List[int]:
    size = len(table)
    return [
        e
        for e in range(size)
        if all(table[e][x] == x and table[x][e] == x for x in range(size))
    ]


def _breaks_associativity(table, size: int, a: int, b: int) -> bool:
    """
    Check every associativity instance in which the freshly filled cell
    (a, b) takes part and whose other cells are known.
    """
    ab = table[a][b]
    for c in range(size):
        # (a b) c against a (b c)
        left, bc = table[ab][c], table[b][c]
        if left is not None and bc is not None:
            right = table[a][bc]
            if right is not None and left != right:
                return True
        # (c a) b against c (a b)
        ca, right = table[c][a], table[c][ab]
        if ca is not None and right is not None:
            left = table[ca][b]
            if left is not None and left != right:
                return True

    for x, y in product(range(size), repeat=2):
        # (x y) b with x y = a
        if table[x][y] == a and table[y][b] is not None:
            other = table[x][table[y][b]]
            if other is not None and other != ab:
                return True
        # a (x y) with x y = b
        if table[x][y] == b and table[a][x] is not None:
            other = table[table[a][x]][y]
            if other is not None and other != ab:
                return True

    return False


def associative_tables(size: int) -> Iterator[List[List[int]]]:
    """
    Every associative multiplication table on `size` elements, filled cell
    by cell with early pruning.
    """
    table: List[List[Any]] = [[None] * size for _ in range(size)]
    cells = [(a, b) for a in range(size) for b in range(size)]

    def fill(position: int) -> Iterator[List[List[int]]]:
        if position == len(cells):
            yield [row[:] for row in table]
            return
        a, b = cells[position]
        for value in range(size):
            table[a][b] = value
            if not _breaks_associativity(table, size, a, b):
                yield from fill(position + 1)
        table[a][b] = None

    yield from fill(0)


def monoid_census(size: int) -> MonoidCensus:
    """
    Count the associative binary operations on a set of `size` elements,
    those with a two-sided unit, and the largest number of two-sided units
    any of them has. Up to three elements the unit count is also taken over
    every binary operation, associative or not.
    """
    if not 1 <= size <= MAX_CENSUS_SIZE:
        raise CarrierTooLarge(
            f"Census supports carriers of 1 to {MAX_CENSUS_SIZE} elements, "
            f"got {size}."
        )

    associative = unital = max_units = 0
    for table in associative_tables(size):
        associative += 1
        units = len(two_sided_units(table))
        unital += units > 0
        max_units = max(max_units, units)

    all_checked = size <= 3
    if all_checked:
        for flat in product(range(size), repeat=size * size):
            rows = [list(flat[k * size : (k + 1) * size]) for k in range(size)]
            max_units = max(max_units, len(two_sided_units(rows)))

    logger.info(
        f"Census on {size} elements: {associative} associative, "
        f"{unital} unital."
    )

    return MonoidCensus(
        size=size,
        operations=size ** (size * size),
        associative_count=associative,
        unital_count=unital,
        max_units_per_op=max_units,
        all_operations_checked=all_checked,
        passed=max_units <= 1,
    )


### UNIT TRANSFER ###


def unit_transfer_check(
    operad: SetOperad, f_mu: Any, f_u: Any, g_u: Any
) -> bool:
    """
    From f_mu o_1 f_u = id and f_mu o_2 g_u = id conclude f_u = g_u:
    (f_mu o_1 f_u) o_1 g_u is g_u by the first hypothesis and, through the
    exchange axiom, equals (f_mu o_2 g_u) o_1 f_u = f_u.
    """
    return replay_unit_transfer(operad, f_mu, f_u, g_u).conclusion


def replay_unit_transfer(
    operad: SetOperad, f_mu: Any, f_u: Any, g_u: Any
) -> UnitTransfer:
    if operad.arity(f_mu) != 2:
        raise ArityError(f"f_mu must have arity 2, got {operad.arity(f_mu)}.")
    for name, unit in (("f_u", f_u), ("g_u", g_u)):
        if operad.arity(unit) != 0:
            raise ArityError(
                f"{name} must have arity 0, got {operad.arity(unit)}."
            )

    left = operad.compose(f_mu, 1, f_u)
    right = operad.compose(f_mu, 2, g_u)
    if left != operad.identity:
        raise HypothesisError("f_mu o_1 f_u is not the identity.")
    if right != operad.identity:
        raise HypothesisError("f_mu o_2 g_u is not the identity.")

    first_chain = operad.compose(left, 1, g_u)
    second_chain = operad.compose(right, 1, f_u)

    return UnitTransfer(
        first_chain=operad.format(first_chain),
        second_chain=operad.format(second_chain),
        exchange_holds=first_chain == second_chain,
        first_is_g_u=first_chain == g_u,
        second_is_f_u=second_chain == f_u,
        conclusion=(
            first_chain == second_chain == g_u and second_chain == f_u
        ),
    )
