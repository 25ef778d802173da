"""
Vertex labels of the u-infinity DG-operads.

The degree-0 labels come from the associative operads (mu-corollas, the
unit u, the identity pad); the free generators are the nu_n^S of arity
n - |S| and degree n - 2 + |S|.
"""
import re
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterator, Tuple, Union

from src.errors import ArityError, ParseError
from src.set_operad.associative import (
    IDENTITY,
    MU,
    UNIT,
    Identity,
    MuCorolla,
    Unit,
)


@dataclass(frozen=True, slots=True)
class Nu:
    """
    Generator nu_n^S; S is stored sorted.
    """

    n: int
    S: Tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ArityError(f"nu_n needs n >= 1, got {self.n}.")
        if not self.S:
            raise ArityError("nu_n^S needs a non-empty S.")
        if tuple(sorted(set(self.S))) != self.S:
            raise ArityError(f"S must be strictly increasing, got {self.S}.")
        if self.S[0] < 1 or self.S[-1] > self.n:
            raise ArityError(f"S = {self.S} is not a subset of 1..{self.n}.")

    @classmethod
    def of(cls, n: int, S) -> "Nu":
        return cls(n, tuple(sorted(S)))

    @property
    def arity(self) -> int:
        return self.n - len(self.S)

    @property
    def degree(self) -> int:
        return self.n - 2 + len(self.S)

    @property
    def level(self) -> int:
        """
        |S|, the filtration level the generator first appears in.
        """
        return len(self.S)

    @property
    def subset(self) -> FrozenSet[int]:
        return frozenset(self.S)

    def __str__(self) -> str:
        return f"nu({self.n},{{{','.join(map(str, self.S))}}})"


GradedLabel = Union[MuCorolla, Unit, Identity, Nu]


def is_free(label: GradedLabel) -> bool:
    return isinstance(label, Nu)


def generators(max_weight: int) -> Iterator[Nu]:
    """
    Every nu_n^S with n + |S| <= max_weight, by n, then |S|, then S.
    """
    from itertools import combinations

    for n in range(1, max_weight):
        for size in range(1, min(n, max_weight - n) + 1):
            for S in combinations(range(1, n + 1), size):
                yield Nu(n, S)


def level_generators(m: int, max_n: int) -> Iterator[Nu]:
    """
    The nu_n^S with |S| = m and n <= max_n, by n.
    """
    from itertools import combinations

    for n in range(m, max_n + 1):
        for S in combinations(range(1, n + 1), m):
            yield Nu(n, S)


### SERIALIZATION ###


_NU_PATTERN = re.compile(r"^nu\((\d+),\{([\d,]*)\}\)$")
_MU_PATTERN = re.compile(r"^mu(?:\^(\d+))?$")


def parse_label(text: str) -> GradedLabel:
    """
    Read `mu`, `mu^k`, `u`, `id` or `nu(n,{s1,...})`.
    """
    text = "".join(text.split())
    if text == "u":
        return UNIT
    if text == "id":
        return IDENTITY

    match = _MU_PATTERN.match(text)
    if match:
        exponent = int(match.group(1)) if match.group(1) else 1
        if exponent < 1:
            raise ParseError(f"mu^{exponent} is not a corolla label.")
        return MuCorolla(exponent + 1)

    match = _NU_PATTERN.match(text)
    if match:
        subset = [int(s) for s in match.group(2).split(",") if s]
        try:
            return Nu.of(int(match.group(1)), subset)
        except ArityError as error:
            raise ParseError(str(error)) from error

    raise ParseError(f"Unknown label {text!r}.")


def label_to_json(label: GradedLabel) -> Dict[str, Any]:
    if isinstance(label, MuCorolla):
        return {"kind": "mu", "k": label.arity}
    if isinstance(label, Unit):
        return {"kind": "u"}
    if isinstance(label, Identity):
        return {"kind": "id"}
    return {"kind": "nu", "n": label.n, "S": list(label.S)}


def label_from_json(data: Dict[str, Any]) -> GradedLabel:
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "mu":
        return MuCorolla(int(data["k"]))
    if kind == "u":
        return UNIT
    if kind == "id":
        return IDENTITY
    if kind == "nu":
        return Nu.of(int(data["n"]), data["S"])
    raise ParseError(f"Unknown label {data!r}.")


__all__ = [
    "GradedLabel",
    "IDENTITY",
    "Identity",
    "MU",
    "MuCorolla",
    "Nu",
    "UNIT",
    "Unit",
    "generators",
    "is_free",
    "label_from_json",
    "label_to_json",
    "level_generators",
    "parse_label",
]
