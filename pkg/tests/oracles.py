"""Independent reference implementations used only by the tests.

Nothing here imports weakhm: each oracle recomputes its answer the slow,
obvious way so it can stand against the library's own path.
"""
import itertools
from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def pascal(a, b):
    """Binomial via Pascal's rule, zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    if b == 0 or b == a:
        return 1
    return pascal(a - 1, b - 1) + pascal(a - 1, b)


def brute_space(n, l):
    """P(n, l) by filtering the full box {0..n}^l; itertools.product is lexicographic."""
    return [u for u in itertools.product(range(n + 1), repeat=l) if sum(u) == n]


def agree(u, v):
    return sum(1 for a, b in zip(u, v) if a == b)


def pairwise_t_intersecting(members, t):
    return all(agree(u, v) >= t for u, v in itertools.combinations(members, 2))


def constant_coords(members):
    return [i for i in range(len(members[0])) if len({u[i] for u in members}) == 1]


def brute_maximal(members, space, t):
    """No outside composition can be added while keeping t-intersection."""
    s = set(members)
    return not any(all(agree(u, v) >= t for v in members) for u in space if u not in s)


def _popcount(masks):
    return np.bitwise_count(masks)


def brute_max_family(space, t):
    """Largest t-intersecting subset of ``space`` under both constraints,
    by testing every one of the 2**|space| subsets.

    Returns ``(max_any, max_no_fixation)``; the second is 0 when no non-empty
    subset has fewer than ``t`` constant coordinates.
    """
    N = len(space)
    l = len(space[0])
    masks = np.arange(1 << N, dtype=np.uint32)
    full = (1 << N) - 1
    bad = np.zeros(masks.shape, dtype=bool)
    for v in range(N):
        nonadj = 0
        for w in range(N):
            if w != v and agree(space[v], space[w]) < t:
                nonadj |= 1 << w
        if nonadj:
            member = ((masks >> np.uint32(v)) & np.uint32(1)).astype(bool)
            bad |= member & ((masks & np.uint32(nonadj)) != 0)
    sizes = _popcount(masks)
    sizes[bad] = 0
    best_any = int(sizes.max())

    fixed = np.zeros(masks.shape, dtype=np.int16)
    for i in range(l):
        fixed_i = np.zeros(masks.shape, dtype=bool)
        for value in {u[i] for u in space}:
            cls = sum(1 << w for w in range(N) if space[w][i] == value)
            fixed_i |= (masks & np.uint32(full ^ cls)) == 0
        fixed += fixed_i
    ok = (~bad) & (masks != 0) & (fixed < t)
    best_nontrivial = int(_popcount(masks[ok]).max()) if ok.any() else 0
    return best_any, best_nontrivial


def brute_max_independent(members):
    best = 0
    for size in range(len(members), 0, -1):
        for combo in itertools.combinations(members, size):
            if all(agree(u, v) == 0 for u, v in itertools.combinations(combo, 2)):
                return size
    return best
