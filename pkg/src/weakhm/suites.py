"""Parameter grids and the suites run by ``weakhm verify``."""
from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .compositions import Space, enumerate_space
from .intersect import Family, agreement
from .reports import VerifyReport
from .search import check_lemma32
from .verify import (
    lemma36_threshold,
    verify_family_inequality,
    verify_hm_construction,
    verify_main_small,
    verify_numeric,
)

SUITES = ("section2", "section3", "construction", "main-small", "all")

Case = tuple[str, str, dict]  # (verifier kind, case id, params)


def _nonempty_subsets(items) -> Iterator[tuple[int, ...]]:
    items = list(items)
    for size in range(1, len(items) + 1):
        yield from itertools.combinations(items, size)


def section2_cases(max_m: int = 6, rs: Iterable[int] = (3, 4), ts: Iterable[int] = (1, 2)) -> Iterator[Case]:
    """Every valid parameter set with ``m <= max_m`` and values in ``0..m+1``."""
    rs, ts = tuple(rs), tuple(ts)
    for m in range(1, max_m + 1):
        values = range(m + 2)
        for r in rs:
            for y in itertools.product(values, repeat=r):
                yield "family", "L2_1", {"m": m, "r": r, "y": list(y)}
            for k in range(1, r - 1):
                for y in itertools.product(values, repeat=k):
                    yield "family", "L2_2", {"m": m, "r": r, "k": k, "y": list(y)}
            for k in range(1, min(r - 1, m) + 1):
                for k0 in range(1, k + 1):
                    for y in itertools.product(values, repeat=k):
                        yield "family", "L2_3", {"m": m, "r": r, "k": k, "k0": k0, "y": list(y)}
            for S in _nonempty_subsets(range(1, r + 1)):
                if m < len(S):
                    continue
                for ys in itertools.product(values, repeat=len(S)):
                    if not sum(ys):
                        continue
                    y = [0] * r
                    for s, v in zip(S, ys):
                        y[s - 1] = v
                    yield "family", "T2_4", {"m": m, "r": r, "S": list(S), "y": y}
        # the corollary is swept at r = 3 only
        r = 3
        for t in ts:
            for S in _nonempty_subsets(range(t + 1, t + r + 1)):
                for w in itertools.product(values, repeat=t):
                    if m < len(S) + sum(w):
                        continue
                    for ys in itertools.product(values, repeat=len(S)):
                        if not sum(ys):
                            continue
                        y = [0] * r
                        for s, v in zip(S, ys):
                            y[s - t - 1] = v
                        yield "family", "C2_5", {"m": m, "r": r, "t": t, "S": list(S), "w": list(w), "y": y}


def random_rational_vectors(seed: int, count: int = 200, max_r: int = 6) -> list[list[Fraction]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        r = rng.randint(1, max_r)
        out.append([Fraction(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(r)])
    return out


SMALL_RATIONALS = (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2), Fraction(7, 2))
LEMMA36_FG = (Fraction(1, 2), Fraction(1), Fraction(2))


def section3_cases(seed: int = 0, max_hockey_l: int = 12, max_hockey_n: int = 50,
                   max_m: int = 8, max_n: int = 40) -> Iterator[Case]:
    for l in range(2, max_hockey_l + 1):
        for t in range(1, l):
            for n in range(1, max_hockey_n + 1):
                yield "numeric", "HOCKEY", {"n": n, "l": l, "t": t}
    for m in range(1, max_m + 1):
        for n in range(m, max_n + 1):
            if n >= m + 1:
                yield "numeric", "L3_4", {"n": n, "m": m}
            yield "numeric", "L3_5", {"n": n, "m": m, "side": "lower"}
            yield "numeric", "L3_5", {"n": n, "m": m, "side": "upper"}
    for x in random_rational_vectors(seed):
        yield "numeric", "L3_3", {"x": x}
    for r in (1, 2):
        for x in itertools.product(SMALL_RATIONALS, repeat=r):
            yield "numeric", "L3_3", {"x": list(x)}
    for f, g in itertools.product(LEMMA36_FG, repeat=2):
        for m in (2, 3, 4):
            yield "numeric", "L3_6", {"f": f, "g": g, "m": m, "n": lemma36_threshold(f, g, m)}


def _run_case(case: Case) -> VerifyReport:
    kind, case_id, params = case
    if kind == "family":
        return verify_family_inequality(case_id, params)
    return verify_numeric(case_id, params)


def _sort_key(report: VerifyReport):
    return report.case_id, json.dumps(report.to_dict()["params"], sort_keys=True)


def run_cases(cases: Iterable[Case], workers: int = 1) -> list[VerifyReport]:
    cases = list(cases)
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_run_case, cases, chunksize=256))
    else:
        reports = [_run_case(c) for c in cases]
    return sorted(reports, key=_sort_key)


def _greedy_extend(members: list, pool: list, t: int) -> list:
    for u in pool:
        if u not in members and all(len(agreement(u, v)) >= t for v in members):
            members.append(u)
    return members


def lemma32_trials(seed: int = 0, trials: int = 40) -> Iterator[tuple[Family, list, list, int]]:
    """Random t-intersecting families, half of them planted with an independent
    restriction so the hypothesis is exercised, not only the vacuous branch."""
    rng = random.Random(seed)
    for trial in range(trials):
        t = rng.choice((1, 2))
        l = rng.randint(t + 3, t + 4)
        n = rng.randint(2, 6)
        space = Space(n, l)
        X = sorted(rng.sample(range(1, l + 1), t + 1))
        y = [0] * (t + 1)
        y[rng.randrange(t + 1)] = rng.randint(0, 1)
        members: list = []
        if trial % 2 == 0:
            reduced = enumerate_space(Space(n - sum(y), l - t - 1))
            rng.shuffle(reduced)
            indep: list = []
            for v in reduced:
                if len(indep) == l - t:
                    break
                if all(not agreement(v, w) for w in indep):
                    indep.append(v)
            for v in indep:
                u = list(v)
                for x, value in zip(X, y):
                    u.insert(x - 1, value)
                members.append(tuple(u))
        everything = enumerate_space(space)
        rng.shuffle(everything)
        _greedy_extend(members, everything, t)
        yield Family(space, tuple(members)), X, y, t


def run_section3(seed: int = 0, workers: int = 1) -> list[VerifyReport]:
    reports = run_cases(section3_cases(seed), workers)
    lemma32 = [check_lemma32(*trial) for trial in lemma32_trials(seed)]
    return reports + sorted(lemma32, key=_sort_key)


def run_construction(max_n: int = 12) -> list[VerifyReport]:
    return [verify_hm_construction(n, 2 * t + 3, t) for t in (1, 2) for n in range(1, max_n + 1)]


def run_main_small(max_n: int = 3, l: int = 5, t: int = 1, budget: Optional[int] = None,
                   workers: int = 1) -> list[VerifyReport]:
    return [verify_main_small(n, l, t, budget, workers) for n in range(1, max_n + 1)]


def run_suite(name: str, max_m: Optional[int] = None, max_n: Optional[int] = None, seed: int = 0,
              budget: Optional[int] = None, workers: int = 1) -> list[VerifyReport]:
    if name == "section2":
        return run_cases(section2_cases(6 if max_m is None else max_m), workers)
    if name == "section3":
        return run_section3(seed, workers)
    if name == "construction":
        return run_construction(12 if max_n is None else max_n)
    if name == "main-small":
        return run_main_small(3 if max_n is None else max_n, budget=budget, workers=workers)
    if name == "all":
        return [r for part in SUITES[:-1] for r in run_suite(part, max_m, max_n, seed, budget, workers)]
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
