"""Agreement sets, t-intersection, triviality and maximality of families."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .compositions import (
    DEFAULT_ENUM_CAP,
    Composition,
    Space,
    count_space,
    enumerate_space,
)
from .errors import PreconditionError, SpaceMismatchError


@dataclass(frozen=True)
class Family:
    """A duplicate-free set of compositions of one space.

    Members are kept sorted lexicographically so iteration order, and
    everything derived from it, is deterministic.
    """

    space: Space
    members: tuple[Composition, ...] = ()

    def __post_init__(self):
        members = tuple(sorted(set(tuple(u) for u in self.members)))
        for u in members:
            if u not in self.space:
                raise SpaceMismatchError(f"{u} is not an element of {self.space}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, space: Space, members: Iterable[Sequence[int]]) -> "Family":
        return cls(space, tuple(tuple(u) for u in members))

    @cached_property
    def _index(self) -> frozenset:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Composition]:
        return iter(self.members)

    def __contains__(self, u) -> bool:
        return tuple(u) in self._index

    def as_array(self) -> np.ndarray:
        return np.array(self.members, dtype=np.int64).reshape(len(self), self.space.l)


def agreement(u: Sequence[int], v: Sequence[int]) -> frozenset[int]:
    """1-indexed coordinates where ``u`` and ``v`` take equal values."""
    if len(u) != len(v) or sum(u) != sum(v):
        raise SpaceMismatchError(f"{tuple(u)} and {tuple(v)} lie in different spaces")
    return frozenset(i for i, (a, b) in enumerate(zip(u, v), start=1) if a == b)


def first_violating_pair(family: Family, t: int) -> Optional[tuple[Composition, Composition]]:
    """The first pair (in member order) agreeing on fewer than ``t`` coordinates."""
    if len(family) < 2:
        return None
    arr = family.as_array()
    for i in range(len(arr) - 1):
        counts = (arr[i + 1:] == arr[i]).sum(axis=1)
        bad = np.flatnonzero(counts < t)
        if bad.size:
            return family.members[i], family.members[i + 1 + int(bad[0])]
    return None


def is_t_intersecting(family: Family, t: int) -> bool:
    if t < 1:
        raise PreconditionError("t must be >= 1")
    return first_violating_pair(family, t) is None


def fixation_coords(family: Family) -> dict[int, int]:
    """Coordinates on which every member takes the same value, with that value."""
    if not len(family):
        raise PreconditionError("fixation_coords needs a non-empty family")
    first = family.members[0]
    fixed = {}
    for i in range(family.space.l):
        if all(u[i] == first[i] for u in family.members):
            fixed[i + 1] = first[i]
    return fixed


class FamilyKind(str, enum.Enum):
    EXACTLY_TRIVIAL = "exactly-trivial"
    STAR_CONTAINED = "star-contained"
    NON_TRIVIAL = "non-trivial"


@dataclass(frozen=True)
class FamilyClass:
    kind: FamilyKind
    coords: Optional[tuple[int, ...]] = None
    values: Optional[tuple[int, ...]] = None

    @property
    def trivial_by_equality(self) -> bool:
        return self.kind is FamilyKind.EXACTLY_TRIVIAL

    @property
    def trivial_by_containment(self) -> bool:
        return self.kind is not FamilyKind.NON_TRIVIAL

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "T": list(self.coords) if self.coords is not None else None,
            "y": list(self.values) if self.values is not None else None,
        }


def star_size(space: Space, values: Sequence[int]) -> int:
    """Size of the full trivial family fixing ``len(values)`` coordinates."""
    rest = space.n - sum(values)
    if rest < 0:
        return 0
    return count_space(Space(rest, space.l - len(values)))


def classify_family(family: Family, t: int) -> FamilyClass:
    """Place a non-empty t-intersecting family in one of the three kinds.

    A family fixing at least ``t`` coordinates sits inside a star; it is
    exactly trivial when, for some t-subset of those coordinates, its size
    equals the size of the full star. Witnesses use the lexicographically
    smallest qualifying t-set.
    """
    if not len(family):
        raise PreconditionError("classify_family needs a non-empty family")
    if not is_t_intersecting(family, t):
        raise PreconditionError(f"family is not {t}-intersecting")
    fixed = fixation_coords(family)
    if len(fixed) < t:
        return FamilyClass(FamilyKind.NON_TRIVIAL)
    for coords in itertools.combinations(sorted(fixed), t):
        values = tuple(fixed[c] for c in coords)
        if len(family) == star_size(family.space, values):
            return FamilyClass(FamilyKind.EXACTLY_TRIVIAL, coords, values)
    coords = tuple(sorted(fixed)[:t])
    return FamilyClass(FamilyKind.STAR_CONTAINED, coords, tuple(fixed[c] for c in coords))


def is_independent(family: Family) -> bool:
    """True iff distinct members pairwise disagree on every coordinate."""
    if len(family) < 2:
        return True
    arr = family.as_array()
    for i in range(len(arr) - 1):
        if (arr[i + 1:] == arr[i]).any():
            return False
    return True


def _member_masks(family: Family) -> list[dict[int, int]]:
    # masks[i][v]: bitset of members whose coordinate i equals v
    masks: list[dict[int, int]] = [dict() for _ in range(family.space.l)]
    for bit, u in enumerate(family.members):
        for i, x in enumerate(u):
            masks[i][x] = masks[i].get(x, 0) | (1 << bit)
    return masks


def extends_t_intersecting(masks: list[dict[int, int]], full: int, u: Sequence[int], t: int) -> bool:
    """Whether ``u`` agrees with every member on at least ``t`` coordinates.

    ``levels[k]`` holds the members already agreeing with ``u`` on more than
    ``k`` coordinates (a saturating bit-sliced counter).
    """
    levels = [0] * t
    for i, x in enumerate(u):
        m = masks[i].get(x, 0)
        if not m:
            continue
        for k in range(t - 1, 0, -1):
            levels[k] |= levels[k - 1] & m
        levels[0] |= m
    return levels[t - 1] == full


def addable_compositions(family: Family, t: int, cap: int = DEFAULT_ENUM_CAP) -> list[Composition]:
    """Compositions outside ``family`` whose addition keeps it t-intersecting."""
    masks = _member_masks(family)
    full = (1 << len(family)) - 1
    return [
        u
        for u in enumerate_space(family.space, cap)
        if u not in family and extends_t_intersecting(masks, full, u, t)
    ]


def is_maximal_t_intersecting(family: Family, t: int, cap: int = DEFAULT_ENUM_CAP) -> bool:
    if not is_t_intersecting(family, t):
        raise PreconditionError(f"family is not {t}-intersecting")
    masks = _member_masks(family)
    full = (1 << len(family)) - 1
    for u in enumerate_space(family.space, cap):
        if u not in family and extends_t_intersecting(masks, full, u, t):
            return False
    return True
