"""Named families and closed-form sizes.

A :class:`FamilyPattern` is a disjunction of clauses, each clause a
conjunction of ``coordinate == value`` constraints. Every C/D family in the
inequalities checked by ``weakhm.verify`` is one such pattern.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .compositions import (
    DEFAULT_ENUM_CAP,
    Space,
    binomial,
    check_coords,
    count_space,
    enumerate_space,
    insert_coords,
)
from .errors import (
    InfeasibleValuesError,
    InvalidCoordinateError,
    ParameterRangeError,
    PreconditionError,
)
from .intersect import Family

Clause = tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class FamilyPattern:
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if not self.clauses:
            raise ValueError("a pattern needs at least one clause")
        norm = []
        for clause in self.clauses:
            items = dict(clause.items()) if isinstance(clause, Mapping) else dict(clause)
            if not items:
                raise ValueError("clauses must constrain at least one coordinate")
            norm.append(tuple(sorted(items.items())))
        object.__setattr__(self, "clauses", tuple(norm))

    @classmethod
    def of(cls, *clauses: Mapping[int, int]) -> "FamilyPattern":
        return cls(tuple(tuple(sorted(c.items())) for c in clauses))

    def validate(self, space: Space) -> None:
        for clause in self.clauses:
            for coord, value in clause:
                if not 1 <= coord <= space.l:
                    raise InvalidCoordinateError(f"coordinate {coord} outside [1, {space.l}]")
                if value < 0:
                    raise ValueError(f"required value {value} is negative")

    def matches(self, u: Sequence[int]) -> bool:
        return any(all(u[c - 1] == v for c, v in clause) for clause in self.clauses)


def pattern_family(space: Space, pattern: FamilyPattern, cap: int = DEFAULT_ENUM_CAP) -> Family:
    pattern.validate(space)
    return Family(space, tuple(u for u in enumerate_space(space, cap) if pattern.matches(u)))


def _conjunction_count(space: Space, clauses: Sequence[Clause]) -> int:
    merged: dict[int, int] = {}
    for clause in clauses:
        for coord, value in clause:
            if merged.setdefault(coord, value) != value:
                return 0
    rest = space.n - sum(merged.values())
    if rest < 0:
        return 0
    return count_space(Space(rest, space.l - len(merged)))


def pattern_count(space: Space, pattern: FamilyPattern) -> int:
    """|pattern_family| by inclusion-exclusion over clause subsets.

    Runs in ``2**len(clauses)`` conjunction counts and never touches the
    space itself, so it works for arbitrarily large ``n``.
    """
    pattern.validate(space)
    clauses = pattern.clauses
    total = 0
    for size in range(1, len(clauses) + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(clauses, size):
            total += sign * _conjunction_count(space, subset)
    return total


def trivial_family(space: Space, coords: Iterable[int], values: Sequence[int]) -> Family:
    """The full star ``{u : u(j) = y_j for j in T}``."""
    coords = check_coords(coords, space.l)
    values = tuple(values)
    if len(coords) != len(values):
        raise ValueError("T and y must have the same length")
    if not 1 <= len(coords) < space.l:
        raise PreconditionError(f"need 1 <= |T| < l, got |T|={len(coords)}, l={space.l}")
    if sum(values) > space.n:
        raise InfeasibleValuesError(f"sum(y)={sum(values)} exceeds n={space.n}")
    rest = Space(space.n - sum(values), space.l - len(coords))
    return Family(space, tuple(insert_coords(v, coords, values) for v in enumerate_space(rest)))


def _hm_params(n: int, l: int, t: int) -> None:
    if t < 1 or t + 1 >= l:
        raise ParameterRangeError(f"need 1 <= t and t + 1 < l, got l={l}, t={t}")
    if n < 0:
        raise ParameterRangeError(f"n must be >= 0, got {n}")


def hm_extremal_family(n: int, l: int, t: int, T: Optional[Iterable[int]] = None) -> Family:
    """The extremal non-trivial family: the union of the ``A_s`` plus ``q_i`` for i in T.

    ``A_s`` holds the compositions vanishing on T and on coordinate s; ``q_i``
    puts all of ``n`` on coordinate i.
    """
    _hm_params(n, l, t)
    if n < 1:
        raise ParameterRangeError("the extremal family needs n >= 1")
    T = tuple(range(1, t + 1)) if T is None else tuple(T)
    if len(set(T)) != t:
        raise ParameterRangeError(f"T must be a set of exactly t={t} coordinates, got {T}")
    T = check_coords(T, l)
    zeros = (0,) * t
    members = [
        insert_coords(v, T, zeros)
        for v in enumerate_space(Space(n, l - t))
        if 0 in v
    ]
    for i in T:
        q = [0] * l
        q[i - 1] = n
        members.append(tuple(q))
    return Family(Space(n, l), tuple(members))


@dataclass(frozen=True)
class HMBound:
    n: int
    l: int
    t: int
    value: int

    @property
    def union_part(self) -> int:
        """Size of the union of the ``A_s`` alone."""
        return self.value - self.t

    def to_dict(self) -> dict:
        return {"n": self.n, "l": self.l, "t": self.t, "value": self.value,
                "union_part": self.union_part}


def hm_bound(n: int, l: int, t: int) -> HMBound:
    _hm_params(n, l, t)
    value = binomial(n + l - t - 1, l - t - 1) - binomial(n - 1, l - t - 1) + t
    return HMBound(n, l, t, value)


def independence_threshold(q: int, r: int, s: int) -> int:
    """``(2s) ** (2 ** (r - 2) * q) + 1``, exact."""
    if q < 1 or r < 2 or s < 2:
        raise ParameterRangeError(f"need q >= 1 and r, s >= 2, got q={q}, r={r}, s={s}")
    return (2 * s) ** (2 ** (r - 2) * q) + 1
