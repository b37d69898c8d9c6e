"""Exact checks of the counting lemmas, inequalities and the extremal construction.

Every verifier returns a :class:`VerifyReport` carrying both sides as exact
ints or Fractions. Parameters outside a statement's hypotheses give a
``hypothesis-not-met`` report instead of a pass or a fail.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial, isqrt
from typing import Mapping, Optional

from .compositions import Space, binomial
from .constructions import FamilyPattern, hm_bound, hm_extremal_family, pattern_count, pattern_family
from .intersect import (
    Family,
    FamilyKind,
    classify_family,
    first_violating_pair,
    is_maximal_t_intersecting,
)
from .reports import INCONCLUSIVE, VerifyReport
from .search import NO_T_FIXATION, all_max_t_intersecting, check_lemma32, max_t_intersecting

FAMILY_CASES = ("L2_1", "L2_2", "L2_3", "T2_4", "C2_5")
NUMERIC_CASES = ("L3_3", "L3_4", "L3_5", "L3_6", "HOCKEY")


def _ints(seq) -> list[int]:
    return [int(x) for x in seq]


def _counted(space: Space, pattern: FamilyPattern):
    """Enumerated family plus an inclusion-exclusion cross-check of its size."""
    family = pattern_family(space, pattern)
    return family, pattern_count(space, pattern)


def _compare(case_id, params, space, c_pattern, d_pattern, relation, extra=None, case=None):
    """Compare |D| with |C| (or, for ``relation="set="``, D with C as sets)."""
    C, c_formula = _counted(space, c_pattern)
    D, d_formula = _counted(space, d_pattern)
    checks = [("|C| pattern_count", len(C), c_formula), ("|D| pattern_count", len(D), d_formula)]
    if extra is not None:
        checks += extra(C, D)
    detail = {"C_size": len(C), "D_size": len(D)}
    if case:
        detail["case"] = case
    if relation != "set=":
        return VerifyReport.judge(case_id, params, len(D), len(C), relation, detail, checks)
    diff = set(C.members) ^ set(D.members)
    if diff:
        detail["counterexample"] = list(min(diff))
    return VerifyReport.judge(case_id, params, len(diff), 0, "=", detail, checks)


def _lemma21(p):
    m, r, y = int(p["m"]), int(p["r"]), _ints(p["y"])
    params = {"m": m, "r": r, "y": y}
    if len(y) != r:
        raise ValueError("L2_1 needs len(y) == r")
    if m < 1 or r < 3:
        return VerifyReport.skipped("L2_1", params, "needs m >= 1 and r >= 3")
    space = Space(m, r)
    c = FamilyPattern.of(*({i: y[i - 1]} for i in range(1, r - 1)), {r - 1: 0}, {r: 0})
    d = FamilyPattern.of(*({i: y[i - 1]} for i in range(1, r + 1)))
    return _compare("L2_1", params, space, c, d, "<=")


def _lemma22(p):
    m, r, k, y = int(p["m"]), int(p["r"]), int(p["k"]), _ints(p["y"])
    params = {"m": m, "r": r, "k": k, "y": y}
    if len(y) != k:
        raise ValueError("L2_2 needs len(y) == k")
    if m < 1 or r < 3 or not 1 <= k <= r - 2:
        return VerifyReport.skipped("L2_2", params, "needs m >= 1, r >= 3 and k in [r-2]")
    space = Space(m, r)
    prefix = {i: y[i - 1] for i in range(1, k)}
    c = FamilyPattern.of({**prefix, k: 0})
    d = FamilyPattern.of({**prefix, k: y[k - 1]})
    head = m - sum(y[:k - 1])

    def closed(C, D):
        # zero-convention binomials cover the empty cases too
        return [("|C| closed form", len(C), binomial(head + r - k - 1, r - k - 1)),
                ("|D| closed form", len(D), binomial(head - y[k - 1] + r - k - 1, r - k - 1))]

    if head < 0 or y[k - 1] == 0:
        return _compare("L2_2", params, space, c, d, "set=", closed, case="a")
    return _compare("L2_2", params, space, c, d, "<", closed, case="b")


def _lemma23(p):
    m, r, k, k0, y = int(p["m"]), int(p["r"]), int(p["k"]), int(p["k0"]), _ints(p["y"])
    params = {"m": m, "r": r, "k": k, "k0": k0, "y": y}
    if len(y) != k:
        raise ValueError("L2_3 needs len(y) == k")
    if m < 1 or r < 3 or not 1 <= k <= r - 1 or not 1 <= k0 <= k or m < k:
        return VerifyReport.skipped("L2_3", params, "needs r >= 3, k in [r-1], k0 in [k], m >= k")
    space = Space(m, r)
    c = FamilyPattern.of(*({i: y[i - 1]} for i in range(1, k + 1) if i != k0), {k0: 0})
    d = FamilyPattern.of(*({i: y[i - 1]} for i in range(1, k + 1)))
    if y[k0 - 1] == 0:
        return _compare("L2_3", params, space, c, d, "set=", case="a")
    return _compare("L2_3", params, space, c, d, "<", case="b")


def _theorem24(p):
    m, r, S, y = int(p["m"]), int(p["r"]), sorted(set(_ints(p["S"]))), _ints(p["y"])
    params = {"m": m, "r": r, "S": S, "y": y}
    if len(y) != r:
        raise ValueError("T2_4 needs len(y) == r")
    if r < 3 or not S or not set(S) <= set(range(1, r + 1)) or m < len(S) or m < 1:
        return VerifyReport.skipped("T2_4", params, "needs r >= 3, non-empty S in [r], m >= |S|")
    if sum(y[s - 1] for s in S) == 0:
        return VerifyReport.skipped("T2_4", params, "needs sum of y over S > 0")
    space = Space(m, r)
    c = FamilyPattern.of(*({s: 0} for s in S))
    d = FamilyPattern.of(*({s: y[s - 1]} for s in S))
    # C is the complement of "non-zero on all of S"
    closed = binomial(m + r - 1, r - 1) - binomial(m - len(S) + r - 1, r - 1)
    return _compare("T2_4", params, space, c, d, "<",
                    lambda C, D: [("|C| complement count", len(C), closed)])


def _corollary25(p):
    m, r, t = int(p["m"]), int(p["r"]), int(p["t"])
    S, w, y = sorted(set(_ints(p["S"]))), _ints(p["w"]), _ints(p["y"])
    params = {"m": m, "r": r, "t": t, "S": S, "w": w, "y": y}
    if len(w) != t or len(y) != r:
        raise ValueError("C2_5 needs len(w) == t and len(y) == r (y holds y_{t+1}..y_{t+r})")
    if t < 1 or r < 3 or not S or not set(S) <= set(range(t + 1, t + r + 1)):
        return VerifyReport.skipped("C2_5", params, "needs t >= 1, r >= 3, non-empty S in [r+t] minus [t]")
    if m < len(S) + sum(w):
        return VerifyReport.skipped("C2_5", params, "needs m >= |S| + sum(w)")
    if sum(y[s - t - 1] for s in S) == 0:
        return VerifyReport.skipped("C2_5", params, "needs sum of y over S > 0")
    space = Space(m, r + t)
    head = {i: w[i - 1] for i in range(1, t + 1)}
    d = FamilyPattern.of(*({**head, s: y[s - t - 1]} for s in S))
    c = FamilyPattern.of(*({**head, s: 0} for s in S))
    D, d_formula = _counted(space, d)
    C, c_formula = _counted(space, c)
    rest = m - sum(w)
    bound = sum(binomial(rest - j + r - 2, r - 2) for j in range(len(S)))
    difference = binomial(rest + r - 1, r - 1) - binomial(rest - len(S) + r - 1, r - 1)
    checks = [("|D| pattern_count", len(D), d_formula),
              ("|C| pattern_count", len(C), c_formula),
              ("|C| binomial difference", len(C), difference),
              ("|C| hockey-stick sum", len(C), bound)]
    return VerifyReport.judge("C2_5", params, len(D), bound, "<",
                              {"D_size": len(D), "C_size": len(C)}, checks)


_FAMILY_VERIFIERS = {
    "L2_1": _lemma21, "L2_2": _lemma22, "L2_3": _lemma23, "T2_4": _theorem24, "C2_5": _corollary25,
}


def verify_family_inequality(case: str, params: Mapping) -> VerifyReport:
    """Build the C and D families of one counting inequality and compare them.

    Counts come from enumeration and are cross-checked against
    inclusion-exclusion and, where one exists, the closed form.

    ``params`` keys: ``m``, ``r`` and ``y`` always; ``k`` for L2_2/L2_3;
    ``k0`` for L2_3; ``S`` (1-indexed) for T2_4/C2_5; ``t`` and ``w`` for C2_5,
    whose ``y`` lists the values of coordinates ``t+1 .. t+r``.
    """
    try:
        verifier = _FAMILY_VERIFIERS[case]
    except KeyError:
        raise ValueError(f"unknown case {case!r}; expected one of {FAMILY_CASES}") from None
    return verifier(params)


def _fractions(xs) -> list[Fraction]:
    return [Fraction(x) for x in xs]


def _lemma33(p):
    x = _fractions(p["x"])
    params = {"x": x}
    if not x or any(v <= 0 for v in x):
        return VerifyReport.skipped("L3_3", params, "needs a non-empty vector of positive numbers")
    plus = minus = Fraction(1)
    for v in x:
        plus *= 1 + v
        minus *= 1 - v
    lhs, rhs = plus - minus, 2 * sum(x)
    # with at most two entries no odd product of degree >= 3 exists
    checks = [("equality for r <= 2", lhs, rhs)] if len(x) <= 2 else None
    return VerifyReport.judge("L3_3", params, lhs, rhs, ">=", {"r": len(x), "equality": lhs == rhs}, checks)


def _lemma34(p):
    n, m = int(p["n"]), int(p["m"])
    params = {"n": n, "m": m}
    if m < 1 or n < m + 1:
        return VerifyReport.skipped("L3_4", params, "needs m >= 1 and n >= m + 1")
    lhs = binomial(n + m, m) - binomial(n - 1, m)
    rhs = Fraction((m + 1) * n ** (m - 1), factorial(m - 1))
    return VerifyReport.judge("L3_4", params, lhs, rhs, ">=")


def _lemma35(p):
    n, m, side = int(p["n"]), int(p["m"]), p.get("side", "upper")
    params = {"n": n, "m": m, "side": side}
    if side not in ("lower", "upper"):
        raise ValueError("L3_5 side must be 'lower' or 'upper'")
    if m < 1 or n < m:
        return VerifyReport.skipped("L3_5", params, "needs m >= 1 and n >= m")
    base = Fraction(n ** m, factorial(m))
    middle = binomial(n + m, m)
    if side == "lower":
        return VerifyReport.judge("L3_5", params, base, middle, "<")
    return VerifyReport.judge("L3_5", params, middle, base * (1 + Fraction(2 ** m * m, n)), "<")


def lemma36_threshold(f, g, m: int) -> int:
    """Smallest integer n meeting every lower bound assumed by the proof."""
    f, g = Fraction(f), Fraction(g)
    bound = max(Fraction(m), Fraction(2 ** (m - 1) * (m - 1)), (2 ** m / g) ** 2, (3 * f * g * m) ** 2)
    return -((-bound.numerator) // bound.denominator)


def _lemma36(p):
    f, g, m = Fraction(p["f"]), Fraction(p["g"]), int(p["m"])
    n = int(p["n"]) if p.get("n") is not None else lemma36_threshold(f, g, m)
    params = {"f": f, "g": g, "m": m, "n": n}
    if f <= 0 or g <= 0 or m < 1:
        return VerifyReport.skipped("L3_6", params, "needs f, g > 0 and m >= 1")
    if n < lemma36_threshold(f, g, m):
        return VerifyReport.skipped("L3_6", params, "n below the proof's threshold")
    plain = f * binomial(n + m, m)
    radical = g * binomial(n + m - 1, m - 1)
    right = Fraction(n ** m) * (f + 1) / factorial(m)
    # plain + radical*sqrt(n) < right  <=>  radical^2 * n < (right - plain) * |right - plain|
    gap = right - plain
    sq_lhs, sq_rhs = radical * radical * n, gap * abs(gap)
    squared_ok = sq_lhs < sq_rhs
    detail = {"plain_term": plain, "radical_coefficient": radical, "rhs": right,
              "squared_form": {"lhs": sq_lhs, "rhs": sq_rhs, "ok": squared_ok}}
    root = isqrt(n)
    if root * root == n:
        lhs = plain + radical * root
        checks = [("squared form agrees with direct form", squared_ok, lhs < right)]
        return VerifyReport.judge("L3_6", params, lhs, right, "<", detail, checks)
    return VerifyReport.judge("L3_6", params, sq_lhs, sq_rhs, "<", detail)


def _hockey(p):
    n, l, t = int(p["n"]), int(p["l"]), int(p["t"])
    params = {"n": n, "l": l, "t": t}
    if not 1 <= t < l or n < 1:
        return VerifyReport.skipped("HOCKEY", params, "needs 1 <= t < l and n >= 1")
    lhs = binomial(n + l - t - 1, l - t - 1) - binomial(n - 1, l - t - 1)
    rhs = sum(binomial(n - d + l - t - 2, l - t - 2) for d in range(l - t))
    return VerifyReport.judge("HOCKEY", params, lhs, rhs, "=")


_NUMERIC_VERIFIERS = {
    "L3_3": _lemma33, "L3_4": _lemma34, "L3_5": _lemma35, "L3_6": _lemma36, "HOCKEY": _hockey,
}


def verify_numeric(case: str, params: Mapping) -> VerifyReport:
    """Exact-rational check of one numeric lemma or identity.

    L3_5 holds two inequalities; ``params["side"]`` picks ``"lower"`` or
    ``"upper"``. For L3_6, ``n`` defaults to the proof's own threshold.
    """
    try:
        verifier = _NUMERIC_VERIFIERS[case]
    except KeyError:
        raise ValueError(f"unknown case {case!r}; expected one of {NUMERIC_CASES}") from None
    return verifier(params)


def verify_hm_construction(n: int, l: int, t: int, check_maximal: bool = True) -> VerifyReport:
    params = {"n": n, "l": l, "t": t}
    if t < 1 or l < 2 * t + 3 or n < 1:
        return VerifyReport.skipped("HM_CONSTRUCTION", params, "needs t >= 1, l >= 2t + 3, n >= 1")
    family = hm_extremal_family(n, l, t)
    bound = hm_bound(n, l, t)
    violation = first_violating_pair(family, t)
    detail = {"bound": bound.value, "union_part": bound.union_part, "t_intersecting": violation is None}
    checks = [("t-intersecting", violation is None, True)]
    if violation is not None:
        detail["counterexample"] = [list(violation[0]), list(violation[1])]
    else:
        kind = classify_family(family, t).kind
        detail["classification"] = kind.value
        detail["degenerate"] = n == 1
        if n >= 2:
            checks.append(("non-trivial (containment)", kind is FamilyKind.NON_TRIVIAL, True))
        if check_maximal:
            detail["maximal"] = is_maximal_t_intersecting(family, t)
    return VerifyReport.judge("HM_CONSTRUCTION", params, len(family), bound.value, "=", detail, checks)


def _extremal_shapes(n: int, l: int, t: int) -> set:
    return {frozenset(hm_extremal_family(n, l, t, T).members)
            for T in itertools.combinations(range(1, l + 1), t)}


def verify_main_small(n: int, l: int, t: int, budget: Optional[int] = None,
                      workers: int = 1) -> VerifyReport:
    """Exhaustive search for the largest family with fewer than t constant coordinates.

    Only feasibility of the extremal construction is asserted. How the optimum
    compares to the bound is reported, since the theorem is asymptotic.
    """
    params = {"n": n, "l": l, "t": t, "budget": budget}
    if t < 1 or t + 1 >= l or n < 1:
        return VerifyReport.skipped("MAIN_SMALL", params, "needs 1 <= t, t + 1 < l, n >= 1")
    extremal = hm_extremal_family(n, l, t)
    bound = hm_bound(n, l, t).value
    result = max_t_intersecting(Space(n, l), t, NO_T_FIXATION, budget=budget, workers=workers)
    detail = {"bound": bound, "extremal_size": len(extremal), "optimal": result.optimal,
              "nodes_explored": result.nodes_explored, "witness": [list(u) for u in result.witness]}
    if not result.optimal:
        report = VerifyReport.skipped("MAIN_SMALL", params, "node budget exhausted", INCONCLUSIVE)
        report.detail.update(detail, best_so_far=result.best_size)
        return report
    best = result.best_size
    detail["versus_bound"] = "equal" if best == bound else ("exceeds" if best > bound else "below")
    if best == bound:
        optima, complete = all_max_t_intersecting(Space(n, l), t, best, NO_T_FIXATION, budget=budget)
        if complete:
            shapes = _extremal_shapes(n, l, t)
            detail["optimum_count"] = len(optima)
            detail["all_optima_extremal"] = all(frozenset(o.members) in shapes for o in optima)
        else:
            detail["all_optima_extremal"] = None
    return VerifyReport.judge("MAIN_SMALL", params, best, len(extremal), ">=", detail)


def replay(report_dict: Mapping) -> VerifyReport:
    """Re-run the verifier that produced a serialised report."""
    case, params = report_dict["case_id"], dict(report_dict["params"])
    if case in _FAMILY_VERIFIERS:
        return verify_family_inequality(case, params)
    if case in _NUMERIC_VERIFIERS:
        return verify_numeric(case, params)
    if case == "HM_CONSTRUCTION":
        return verify_hm_construction(params["n"], params["l"], params["t"])
    if case == "MAIN_SMALL":
        return verify_main_small(params["n"], params["l"], params["t"], params.get("budget"))
    if case == "L3_2":
        members = tuple(tuple(u) for u in report_dict["detail"]["members"])
        family = Family(Space(params["n"], params["l"]), members)
        return check_lemma32(family, params["X"], params["y"], params["t"])
    raise ValueError(f"cannot replay case {case!r}")
