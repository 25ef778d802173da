"""
Interface shared by every operad in Set.
"""
import random
from abc import ABC, abstractmethod
from itertools import islice
from typing import Any, Iterator, List, Optional, Tuple

from src.errors import ArityError


class SetOperad(ABC):
    """
    Non-symmetric operad in Set.

    Subclasses provide:
    - `identity`: the element of arity 1 acting as two-sided unit
    - `arity(x)`: arity of an element
    - `compose(a, i, b)`: partial composition plugging b into slot i of a
    - `elements(n)`: the component of arity n, possibly truncated by the
      bounds the operad was built with
    """

    name: str = "operad"

    @property
    @abstractmethod
    def identity(self) -> Any:
        ...

    @abstractmethod
    def arity(self, x: Any) -> int:
        ...

    @abstractmethod
    def _compose(self, a: Any, i: int, b: Any) -> Any:
        ...

    @abstractmethod
    def elements(self, n: int) -> Iterator[Any]:
        ...

    def compose(self, a: Any, i: int, b: Any) -> Any:
        """
        a o_i b, with a of arity p, 1 <= i <= p.
        """
        p = self.arity(a)
        if not 1 <= i <= p:
            raise ArityError(
                f"Slot {i} out of range for an element of arity {p} "
                f"in {self.name}."
            )
        return self._compose(a, i, b)

    def component_size(self, n: int) -> Optional[int]:
        """
        Size of the component of arity n when known without enumerating.
        """
        return None

    def random_element(self, n: int, rng: random.Random) -> Any:
        raise NotImplementedError(
            f"{self.name} cannot sample elements at random."
        )

    def component(
        self, n: int, bound: int, rng: random.Random
    ) -> Tuple[List[Any], bool]:
        """
        At most `bound` elements of arity n and whether they are all of them.
        Large components with a sampler are sampled, others truncated.
        """
        size = self.component_size(n)
        if size is not None and size > bound:
            try:
                sample = {self.random_element(n, rng) for _ in range(bound)}
                return sorted(sample, key=repr), False
            except NotImplementedError:
                pass

        found = list(islice(self.elements(n), bound + 1))
        if len(found) > bound:
            return found[:bound], False
        return found, True

    def format(self, x: Any) -> str:
        return str(x)
