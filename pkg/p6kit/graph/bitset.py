"""Vertex sets as Python integers.

Bit ``i`` of a mask is set when vertex ``i`` is a member. All set algebra
is plain bitwise arithmetic on these integers.
"""

from collections.abc import Iterable, Iterator
from typing import List

VertexSet = int

EMPTY: VertexSet = 0


def bit(v: int) -> VertexSet:
    return 1 << v


def mask_of(vertices: Iterable[int]) -> VertexSet:
    """Build a mask from vertex ids."""
    mask = 0
    for v in vertices:
        if v < 0:
            raise IndexError(f"negative vertex id {v}")
        mask |= 1 << v
    return mask


def full_mask(n: int) -> VertexSet:
    return (1 << n) - 1


def iter_bits(mask: VertexSet) -> Iterator[int]:
    """Yield member ids in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: VertexSet) -> List[int]:
    return list(iter_bits(mask))


def popcount(mask: VertexSet) -> int:
    return mask.bit_count()


def lowest(mask: VertexSet) -> int:
    """Smallest member id; the mask must be non-empty."""
    if not mask:
        raise ValueError("empty vertex set has no lowest member")
    return (mask & -mask).bit_length() - 1


def contains(mask: VertexSet, v: int) -> bool:
    return (mask >> v) & 1 == 1


def is_subset(a: VertexSet, b: VertexSet) -> bool:
    return a & ~b == 0
