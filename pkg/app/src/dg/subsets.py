"""
Subset combinatorics of the differential: S1 o_i S2, shifts and the
splittings S_v, S'_v.
"""
from typing import FrozenSet, Iterable, Tuple

from src.errors import ArityError


def shift(S: Iterable[int], m: int) -> Tuple[int, ...]:
    """
    S + m.
    """
    return tuple(sorted(s + m for s in S))


def complement(S: Iterable[int], n: int) -> Tuple[int, ...]:
    members = set(S)
    return tuple(k for k in range(1, n + 1) if k not in members)


def subset_circ(
    S1: Iterable[int], p: int, i: int, S2: Iterable[int], q: int
) -> Tuple[int, Tuple[int, ...]]:
    """
    (r, S1 o_i S2) for S1 ⊆ {1..p}, S2 ⊆ {1..q} and 1 <= i <= p - |S1|.

    With S1 = {j_1 < ... < j_s} and S2 = {k_1 < ... < k_t}, r is such that
    the i-th element of the complement of S1 lies between j_(r-1) and j_r
    (r = 1 below j_1, r = s + 1 above j_s), and

        S1 o_i S2 = {j_1, ..., j_(r-1),
                     k_1 + i + r - 2, ..., k_t + i + r - 2,
                     j_r + q - 1, ..., j_s + q - 1}.
    """
    S1 = tuple(sorted(S1))
    S2 = tuple(sorted(S2))
    free = complement(S1, p)
    if not 1 <= i <= len(free):
        raise ArityError(
            f"Slot {i} out of range for S1={set(S1)} in 1..{p}."
        )

    slot = free[i - 1]
    r = 1 + sum(1 for j in S1 if j < slot)
    assert slot == i + r - 1

    result = (
        S1[: r - 1]
        + tuple(k + i + r - 2 for k in S2)
        + tuple(j + q - 1 for j in S1[r - 1 :])
    )
    assert len(set(result)) == len(S1) + len(S2)

    return r, result


def boundaries(S: Tuple[int, ...], n: int) -> Tuple[int, ...]:
    """
    l_0 = 0, l_1 < ... < l_s the elements of S, l_(s+1) = n + 1.
    """
    return (0,) + tuple(S) + (n + 1,)


def split(S: Tuple[int, ...], v: int) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """
    S_v = {l_1, ..., l_(v-1)} and S'_v = S - S_v.
    """
    return frozenset(S[: v - 1]), frozenset(S[v - 1 :])
