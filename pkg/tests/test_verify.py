import itertools
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from oracles import brute_space, pascal
from weakhm.reports import FAIL, HYPOTHESIS_NOT_MET, INCONCLUSIVE, PASS
from weakhm.verify import (
    lemma36_threshold,
    replay,
    verify_family_inequality,
    verify_hm_construction,
    verify_main_small,
    verify_numeric,
)


def _count(n, l, pred):
    return sum(1 for u in brute_space(n, l) if pred(u))


def test_theorem24_example():
    rep = verify_family_inequality("T2_4", {"m": 2, "r": 3, "S": [1], "y": [1, 0, 0]})
    assert (rep.lhs, rep.rhs, rep.relation, rep.status) == (2, 3, "<", PASS)


def test_lemma22_examples():
    rep = verify_family_inequality("L2_2", {"m": 3, "r": 4, "k": 2, "y": [1, 2]})
    assert (rep.lhs, rep.rhs, rep.status) == (1, 3, PASS)
    assert rep.rhs == pascal(3 - 1 + 1, 1)
    rep = verify_family_inequality("L2_2", {"m": 3, "r": 4, "k": 2, "y": [1, 0]})
    assert rep.status == PASS and rep.detail["case"] == "a"
    assert rep.lhs == 0 and rep.detail["C_size"] == rep.detail["D_size"]


def test_lemma21_against_filter():
    m, r, y = 3, 4, [1, 0, 2, 0]
    rep = verify_family_inequality("L2_1", {"m": m, "r": r, "y": y})
    d = _count(m, r, lambda u: any(u[i] == y[i] for i in range(r)))
    c = _count(m, r, lambda u: any(u[i] == y[i] for i in range(r - 2)) or u[r - 2] == 0 or u[r - 1] == 0)
    assert (rep.lhs, rep.rhs) == (d, c) and rep.status == PASS


def test_lemma23_counterexample_at_three_parts():
    # C = {u1 = 0} or {u2 = 2} and D = {u1 = 1} or {u2 = 2} in P(2,3): both have 3 members
    rep = verify_family_inequality("L2_3", {"m": 2, "r": 3, "k": 2, "k0": 1, "y": [1, 2]})
    assert rep.status == FAIL
    assert rep.lhs == rep.rhs == 3
    assert _count(2, 3, lambda u: u[0] == 0 or u[1] == 2) == 3
    assert _count(2, 3, lambda u: u[0] == 1 or u[1] == 2) == 3
    # the failure replays
    assert replay(rep.to_dict()).status == FAIL


@pytest.mark.parametrize("m", range(2, 7))
def test_lemma23_fails_only_on_the_boundary_pattern(m):
    for k0, y in [(1, [1, m]), (2, [m, 1])]:
        rep = verify_family_inequality("L2_3", {"m": m, "r": 3, "k": 2, "k0": k0, "y": y})
        assert rep.status == FAIL and rep.lhs == rep.rhs == m + 1
    # with four parts the same values are fine
    rep = verify_family_inequality("L2_3", {"m": m, "r": 4, "k": 2, "k0": 1, "y": [1, m]})
    assert rep.status == PASS


def test_corollary25_example():
    rep = verify_family_inequality("C2_5", {"m": 4, "r": 3, "t": 1, "S": [2, 3], "w": [1], "y": [1, 2, 0]})
    assert rep.status == PASS
    d = _count(4, 4, lambda u: u[0] == 1 and (u[1] == 1 or u[2] == 2))
    assert rep.lhs == d
    assert rep.rhs == pascal(3 + 1, 1) + pascal(2 + 1, 1)


def test_family_hypothesis_not_met():
    assert verify_family_inequality("T2_4", {"m": 2, "r": 3, "S": [1], "y": [0, 1, 0]}).status == HYPOTHESIS_NOT_MET
    assert verify_family_inequality("L2_3", {"m": 1, "r": 3, "k": 2, "k0": 1, "y": [0, 0]}).status == HYPOTHESIS_NOT_MET
    with pytest.raises(ValueError):
        verify_family_inequality("L9_9", {})


def test_numeric_examples():
    rep = verify_numeric("L3_4", {"n": 5, "m": 3})
    assert (rep.lhs, rep.rhs, rep.status) == (52, 50, PASS)
    assert rep.lhs == pascal(8, 3) - pascal(4, 3)
    rep = verify_numeric("HOCKEY", {"n": 5, "l": 5, "t": 1})
    assert rep.lhs == rep.rhs == 21 + 15 + 10 + 6 and rep.status == PASS
    rep = verify_numeric("L3_3", {"x": [1, 1]})
    assert rep.lhs == rep.rhs == 4 and rep.status == PASS
    rep = verify_numeric("L3_6", {"f": 1, "g": 1, "m": 2, "n": 36})
    assert rep.lhs == 925 and rep.rhs == 1296 and rep.status == PASS


def test_lemma36_threshold():
    assert lemma36_threshold(1, 1, 2) == 36
    assert lemma36_threshold(Fraction(1, 2), Fraction(1, 2), 2) == 64
    assert verify_numeric("L3_6", {"f": 1, "g": 1, "m": 2, "n": 35}).status == HYPOTHESIS_NOT_MET


def test_lemma36_squared_form_matches_direct_on_squares():
    # independent float evaluation on perfect squares well above the threshold
    for n in (36, 49, 100, 400):
        rep = verify_numeric("L3_6", {"f": 1, "g": 1, "m": 2, "n": n})
        direct = pascal(n + 2, 2) + pascal(n + 1, 1) * n ** 0.5 < n * n
        assert rep.passed == direct


positive = st.fractions(min_value=Fraction(1, 50), max_value=10, max_denominator=50)


@given(st.lists(positive, min_size=1, max_size=6))
def test_lemma33_property(x):
    plus = minus = Fraction(1)
    for v in x:
        plus, minus = plus * (1 + v), minus * (1 - v)
    rep = verify_numeric("L3_3", {"x": x})
    assert rep.lhs == plus - minus and rep.status == PASS
    if len(x) <= 2:
        assert rep.lhs == rep.rhs


@pytest.mark.parametrize("m", range(1, 6))
def test_lemma35_both_sides(m):
    for n in range(m, 30):
        base = Fraction(n ** m, factorial(m))
        mid = pascal(n + m, m)
        low = verify_numeric("L3_5", {"n": n, "m": m, "side": "lower"})
        up = verify_numeric("L3_5", {"n": n, "m": m, "side": "upper"})
        assert low.passed == (base < mid)
        assert up.passed == (mid < base * (1 + Fraction(2 ** m * m, n)))


def test_construction_examples():
    rep = verify_hm_construction(10, 5, 1)
    assert rep.lhs == rep.rhs == 203 and rep.status == PASS
    assert rep.detail["maximal"] is True
    rep = verify_hm_construction(1, 5, 1)
    assert rep.lhs == 5 and rep.detail["degenerate"] is True and rep.status == PASS
    rep = verify_hm_construction(4, 7, 2)
    assert rep.lhs == pascal(8, 4) - pascal(3, 4) + 2 and rep.status == PASS


def test_main_small_examples():
    rep = verify_main_small(2, 5, 1)
    # every pair of compositions of 2 into 5 parts shares a zero, and no coordinate is constant
    assert rep.lhs == 15 == len(brute_space(2, 5))
    assert rep.detail["versus_bound"] == "exceeds" and rep.status == PASS
    rep = verify_main_small(1, 5, 1)
    assert rep.lhs >= 5 and rep.status == PASS
    rep = verify_main_small(3, 5, 1, budget=0)
    assert rep.status == INCONCLUSIVE


def test_replay_round_trip():
    reps = [
        verify_family_inequality("T2_4", {"m": 3, "r": 4, "S": [1, 3], "y": [2, 0, 1, 0]}),
        verify_numeric("L3_3", {"x": [Fraction(1, 3), Fraction(7, 2), 2]}),
        verify_numeric("L3_6", {"f": Fraction(1, 2), "g": 2, "m": 3}),
        verify_hm_construction(3, 5, 1),
    ]
    for rep in reps:
        assert replay(rep.to_dict()).to_dict() == rep.to_dict()
