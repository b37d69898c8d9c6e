"""Exact maximum-family search.

t-intersecting families of P(n, l) are exactly the cliques of the
compatibility graph, so the searches here are branch-and-bound maximum
clique searches over integer bitsets, bounded by greedy colouring.

The top level is split into one subproblem per vertex ``i``: cliques whose
smallest vertex is ``i``. Each subproblem is searched depth first in a fixed
order, and pruning only discards subtrees that cannot beat the incumbent, so
the first optimum met in a subproblem does not depend on the incumbent it
started with. That is what lets several workers run subproblems against a
stale incumbent and still reduce to the single-worker witness.
"""
from __future__ import annotations

import itertools
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .compositions import (
    Composition,
    Space,
    check_coords,
    count_space,
    enumerate_space,
    remove_coords,
)
from .errors import (
    DimensionMismatchError,
    ParameterRangeError,
    PreconditionError,
    ResourceLimitError,
)
from .intersect import Family, is_t_intersecting
from .reports import HYPOTHESIS_NOT_MET, INCONCLUSIVE, VerifyReport

DEFAULT_VERTEX_CAP = 5_000

ANY = "any"
NO_T_FIXATION = "no-t-fixation"
_CONSTRAINT_ALIASES = {"any": ANY, "no-t-fixation": NO_T_FIXATION, "nontrivial": NO_T_FIXATION}


def _bitset(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def _bitset_rows(rows: np.ndarray, t: int, independent: bool = False) -> tuple[int, ...]:
    adjacency = []
    for i in range(len(rows)):
        counts = (rows == rows[i]).sum(axis=1)
        flags = counts == 0 if independent else counts >= t
        flags[i] = False
        adjacency.append(_bitset(flags))
    return tuple(adjacency)


@dataclass(frozen=True)
class CompatibilityGraph:
    """Vertices are P(n, l) in enumeration order; edges join compositions
    agreeing on at least ``t`` coordinates. ``adjacency[i]`` is a bitset."""

    space: Space
    t: int
    vertices: tuple[Composition, ...]
    adjacency: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i] >> j & 1)

    def neighbours(self, i: int) -> list[int]:
        return _bits(self.adjacency[i])

    @property
    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adjacency) // 2


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def build_compatibility_graph(space: Space, t: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> CompatibilityGraph:
    if t < 1:
        raise ParameterRangeError("t must be >= 1")
    total = count_space(space)
    if total > vertex_cap:
        raise ResourceLimitError(f"{space} has {total} vertices, above the vertex cap {vertex_cap}")
    vertices = tuple(enumerate_space(space))
    rows = np.array(vertices, dtype=np.int64).reshape(len(vertices), space.l)
    return CompatibilityGraph(space, t, vertices, _bitset_rows(rows, t))


@dataclass(frozen=True)
class SearchResult:
    best_size: int
    witness: Family
    optimal: bool
    nodes_explored: int
    budget_hit: bool

    def to_dict(self) -> dict:
        return {
            "best_size": self.best_size,
            "witness": [list(u) for u in self.witness],
            "space": {"n": self.witness.space.n, "l": self.witness.space.l},
            "optimal": self.optimal,
            "nodes_explored": self.nodes_explored,
            "budget_hit": self.budget_hit,
        }


class _BudgetExhausted(Exception):
    pass


class _CliqueSearch:
    """Depth-first colouring branch and bound over bitset adjacency.

    With ``rows`` and ``t`` given, a clique only scores when fewer than ``t``
    coordinates are constant across it. That property is inherited by every
    superset, so it can be tracked incrementally down each branch, while the
    colouring bound (which ignores it) stays a valid upper bound.
    """

    def __init__(self, adjacency: Sequence[int], budget: Optional[int] = None,
                 rows: Optional[Sequence[Composition]] = None, t: int = 0,
                 target: Optional[int] = None):
        self.adj = adjacency
        self.budget = budget
        self.rows = rows
        self.t = t
        self.constrained = rows is not None
        # target set: collect every scoring clique of exactly that size
        self.target = target
        self.found: list[tuple[int, ...]] = []
        self.best = 0
        self.witness: tuple[int, ...] = ()
        self.nodes = 0

    def _visit(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _BudgetExhausted

    def _fixed_after(self, fixed, first, v):
        row = self.rows[v]
        return tuple(c for c in fixed if row[c] == first[c])

    def _record(self, clique: list[int], fixed) -> None:
        if self.constrained and len(fixed) >= self.t:
            return
        if self.target is not None:
            if len(clique) == self.target:
                self.found.append(tuple(sorted(clique)))
        elif len(clique) > self.best:
            self.best = len(clique)
            self.witness = tuple(sorted(clique))

    def _floor(self) -> int:
        # a branch survives only if it can reach a clique larger than this
        return self.target - 1 if self.target is not None else self.best

    def _colour_sort(self, cand: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        colours: list[int] = []
        colour = 0
        adj = self.adj
        while cand:
            colour += 1
            q = cand
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v] & ~low
                cand &= ~low
                order.append(v)
                colours.append(colour)
        return order, colours

    def _expand(self, clique: list[int], cand: int, fixed, first) -> None:
        order, colours = self._colour_sort(cand)
        adj = self.adj
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + colours[idx] <= self._floor():
                return
            v = order[idx]
            self._visit()
            clique.append(v)
            sub_fixed = self._fixed_after(fixed, first, v) if self.constrained else fixed
            self._record(clique, sub_fixed)
            sub = cand & adj[v]
            if sub:
                self._expand(clique, sub, sub_fixed, first)
            clique.pop()
            cand &= ~(1 << v)

    def run_root(self, i: int) -> None:
        """Search the cliques whose smallest vertex is ``i``."""
        cand = self.adj[i] & ~((1 << (i + 1)) - 1)
        if 1 + cand.bit_count() <= self._floor():
            return
        self._visit()
        first = self.rows[i] if self.constrained else None
        fixed = tuple(range(len(first))) if self.constrained else ()
        self._record([i], fixed)
        if cand:
            self._expand([i], cand, fixed, first)


def _normalise_constraint(constraint: str) -> str:
    try:
        return _CONSTRAINT_ALIASES[constraint]
    except KeyError:
        raise ParameterRangeError(f"unknown constraint {constraint!r}") from None


_WORKER: dict = {}


def _init_worker(adjacency, rows, t):
    _WORKER.update(adjacency=adjacency, rows=rows, t=t)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 6000))


def _solve_root(args) -> tuple[int, tuple[int, ...], int, bool]:
    i, floor, budget = args
    search = _CliqueSearch(_WORKER["adjacency"], budget, _WORKER["rows"], _WORKER["t"])
    search.best = floor
    try:
        search.run_root(i)
    except _BudgetExhausted:
        return search.best, search.witness, search.nodes, True
    return search.best, search.witness, search.nodes, False


def _max_clique(adjacency: Sequence[int], budget: Optional[int], rows=None, t: int = 0,
                workers: int = 1) -> tuple[int, tuple[int, ...], int, bool]:
    """Returns ``(size, witness indices, nodes, budget_hit)``."""
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 6000))
    n = len(adjacency)
    if workers <= 1 or n < 2:
        search = _CliqueSearch(adjacency, budget, rows, t)
        try:
            for i in range(n):
                search.run_root(i)
        except _BudgetExhausted:
            return search.best, search.witness, search.nodes, True
        return search.best, search.witness, search.nodes, False

    best, witness, nodes = 0, (), 0
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(adjacency, rows, t)) as pool:
        for start in range(0, n, workers):
            remaining = None if budget is None else budget - nodes
            if remaining is not None and remaining <= 0:
                return best, witness, min(nodes, budget), True
            chunk = [(i, best, remaining) for i in range(start, min(n, start + workers))]
            hit = False
            for size, wit, used, exhausted in pool.map(_solve_root, chunk):
                nodes += used
                hit = hit or exhausted
                if size > best and wit:
                    best, witness = size, wit
            if hit:
                return best, witness, nodes, True
    return best, witness, nodes, False


def max_t_intersecting(space: Space, t: int, constraint: str = ANY, budget: Optional[int] = None,
                       workers: int = 1, vertex_cap: int = DEFAULT_VERTEX_CAP) -> SearchResult:
    """Largest t-intersecting family of ``space``.

    ``constraint="no-t-fixation"`` (alias ``"nontrivial"``) restricts to
    non-empty families with fewer than ``t`` constant coordinates; if none
    exists the result has size 0. ``budget`` caps the number of search nodes;
    hitting it returns the best family so far with ``optimal=False``.
    """
    constraint = _normalise_constraint(constraint)
    if budget is not None and budget < 0:
        raise ParameterRangeError("budget must be >= 0")
    graph = build_compatibility_graph(space, t, vertex_cap)
    rows = graph.vertices if constraint == NO_T_FIXATION else None
    size, wit, nodes, hit = _max_clique(graph.adjacency, budget, rows, t, workers)
    witness = Family(space, tuple(graph.vertices[i] for i in wit))
    return SearchResult(size, witness, not hit, nodes, hit)


def all_max_t_intersecting(space: Space, t: int, size: int, constraint: str = ANY,
                           budget: Optional[int] = None,
                           vertex_cap: int = DEFAULT_VERTEX_CAP) -> tuple[list[Family], bool]:
    """Every family of exactly ``size`` members admissible under ``constraint``.

    Returns ``(families, complete)``; ``complete`` is False if the budget ran out.
    """
    constraint = _normalise_constraint(constraint)
    graph = build_compatibility_graph(space, t, vertex_cap)
    rows = graph.vertices if constraint == NO_T_FIXATION else None
    search = _CliqueSearch(graph.adjacency, budget, rows, t, target=size)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 6000))
    complete = True
    try:
        for i in range(len(graph)):
            search.run_root(i)
    except _BudgetExhausted:
        complete = False
    families = [Family(space, tuple(graph.vertices[i] for i in found)) for found in search.found]
    return families, complete


def max_independent_subfamily(family: Family, budget: Optional[int] = None, workers: int = 1,
                              vertex_cap: int = DEFAULT_VERTEX_CAP) -> SearchResult:
    """Largest subfamily whose distinct members disagree on every coordinate."""
    if len(family) > vertex_cap:
        raise ResourceLimitError(f"family has {len(family)} members, above the vertex cap {vertex_cap}")
    if not len(family):
        return SearchResult(0, family, True, 0, False)
    adjacency = _bitset_rows(family.as_array(), 0, independent=True)
    size, wit, nodes, hit = _max_clique(adjacency, budget, workers=workers)
    witness = Family(family.space, tuple(family.members[i] for i in wit))
    return SearchResult(size, witness, not hit, nodes, hit)


def restrict_family(family: Family, coords: Sequence[int], values: Sequence[int]) -> tuple[Family, Family]:
    """Members fixing ``values`` on ``coords``, and the same with those coordinates removed.

    When ``sum(values)`` exceeds ``n`` no member can match; the reduced family
    is then returned empty in ``P(0, l - |X|)``.
    """
    if len(coords) != len(values):
        raise DimensionMismatchError(f"|X|={len(coords)} but |y|={len(values)}")
    if list(coords) != sorted(set(coords)):
        raise DimensionMismatchError("X must be strictly ascending")
    check_coords(coords, family.space.l)
    if any(y < 0 for y in values):
        raise ParameterRangeError("values must be non-negative")
    sub = Family(family.space, tuple(
        u for u in family if all(u[x - 1] == y for x, y in zip(coords, values))
    ))
    reduced_space = Space(max(family.space.n - sum(values), 0), family.space.l - len(coords))
    star = Family(reduced_space, tuple(remove_coords(u, coords) for u in sub))
    return sub, star


def _in_conclusion(u: Sequence[int], coords: Sequence[int], values: Sequence[int]) -> bool:
    # u is in some star fixing t of the t+1 pairs iff it misses at most one
    misses = sum(1 for x, y in zip(coords, values) if u[x - 1] != y)
    return misses <= 1


def check_lemma32(family: Family, coords: Sequence[int], values: Sequence[int], t: int,
                  budget: Optional[int] = None) -> VerifyReport:
    """Independent sets in a (t+1)-coordinate restriction force the whole family
    into the union of the t-subset stars of that restriction."""
    space = family.space
    params = {"n": space.n, "l": space.l, "t": t, "X": list(coords), "y": list(values),
              "family_size": len(family)}
    if t < 1 or space.l < t + 3:
        raise PreconditionError(f"need t >= 1 and l >= t + 3, got l={space.l}, t={t}")
    if len(coords) != t + 1 or len(values) != t + 1:
        raise PreconditionError(f"X and y must both have t + 1 = {t + 1} entries")
    if sum(values) > space.n:
        raise PreconditionError(f"sum(y)={sum(values)} exceeds n={space.n}")
    if not is_t_intersecting(family, t):
        raise PreconditionError(f"family is not {t}-intersecting")

    _, star = restrict_family(family, coords, values)
    indep = max_independent_subfamily(star, budget)
    needed = space.l - t
    detail = {"members": [list(u) for u in family], "independent_size": indep.best_size, "needed": needed,
              "independent_witness": [list(u) for u in indep.witness], "search_optimal": indep.optimal}
    if indep.best_size < needed:
        status = HYPOTHESIS_NOT_MET if indep.optimal else INCONCLUSIVE
        report = VerifyReport.skipped("L3_2", params, "restriction has no independent set of size l - t", status)
        report.detail.update(detail)
        return report
    outside = [u for u in family if not _in_conclusion(u, coords, values)]
    if outside:
        detail["counterexample"] = list(outside[0])
    covered = len(family) - len(outside)
    return VerifyReport.judge("L3_2", params, covered, len(family), "=", detail)
