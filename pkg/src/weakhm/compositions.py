"""Weak compositions: enumeration, exact counting and coordinate removal.

A composition is a plain tuple of non-negative ints. Coordinates are
1-indexed wherever a caller names them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidCoordinateError, ResourceLimitError

DEFAULT_ENUM_CAP = 5_000_000

Composition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Space:
    """The set P(n, l) of weak compositions of ``n`` into ``l`` parts."""

    n: int
    l: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"n must be >= 0, got {self.n}")
        if self.l < 0:
            raise ValueError(f"l must be >= 0, got {self.l}")

    def __contains__(self, u) -> bool:
        return len(u) == self.l and all(x >= 0 for x in u) and sum(u) == self.n

    def __str__(self) -> str:
        return f"P({self.n},{self.l})"


def binomial(a: int, b: int) -> int:
    """Binomial coefficient with ``0`` outside ``0 <= b <= a``."""
    if b < 0 or a < 0 or a < b:
        return 0
    return math.comb(a, b)


def count_space(space: Space) -> int:
    """Stars and bars: ``|P(n, l)| = C(n + l - 1, l - 1)``."""
    if space.l == 0:
        return 1 if space.n == 0 else 0
    return binomial(space.n + space.l - 1, space.l - 1)


def iter_space(space: Space) -> Iterator[Composition]:
    """Yield P(n, l) in ascending lexicographic order, lazily."""
    n, l = space.n, space.l
    if l == 0:
        if n == 0:
            yield ()
        return
    yield from _iter(n, l)


def _iter(n: int, l: int) -> Iterator[Composition]:
    if l == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for tail in _iter(n - head, l - 1):
            yield (head,) + tail


def enumerate_space(space: Space, cap: int = DEFAULT_ENUM_CAP) -> list[Composition]:
    """Every element of ``space`` exactly once, lexicographically ascending.

    Raises ResourceLimitError when the space holds more than ``cap`` elements.
    """
    total = count_space(space)
    if total > cap:
        raise ResourceLimitError(
            f"{space} has {total} compositions, above the enumeration cap {cap}"
        )
    return list(_cached_space(space.n, space.l))


@lru_cache(maxsize=64)
def _cached_space(n: int, l: int) -> tuple[Composition, ...]:
    return tuple(iter_space(Space(n, l)))


def check_coords(coords: Iterable[int], l: int) -> tuple[int, ...]:
    """Validate 1-indexed coordinates; return them sorted and de-duplicated."""
    out = sorted(set(coords))
    for x in out:
        if not 1 <= x <= l:
            raise InvalidCoordinateError(f"coordinate {x} outside [1, {l}]")
    return tuple(out)


def remove_coords(u: Sequence[int], coords: Iterable[int]) -> Composition:
    """Drop the given 1-indexed coordinates from ``u``, keeping order."""
    drop = set(check_coords(coords, len(u)))
    return tuple(x for i, x in enumerate(u, start=1) if i not in drop)


def insert_coords(v: Sequence[int], coords: Sequence[int], values: Sequence[int]) -> Composition:
    """Inverse of :func:`remove_coords`.

    ``coords`` are positions in the lengthened tuple and must be ascending.
    """
    out = list(v)
    for x, y in sorted(zip(coords, values)):
        out.insert(x - 1, y)
    return tuple(out)
