import pytest

from oracles import agree, brute_max_family, brute_max_independent, brute_space, constant_coords
from weakhm.compositions import Space
from weakhm.constructions import hm_extremal_family
from weakhm.errors import PreconditionError, ResourceLimitError
from weakhm.intersect import Family, is_independent, is_t_intersecting
from weakhm.reports import HYPOTHESIS_NOT_MET, PASS
from weakhm.search import (
    NO_T_FIXATION,
    all_max_t_intersecting,
    build_compatibility_graph,
    check_lemma32,
    max_independent_subfamily,
    max_t_intersecting,
    restrict_family,
)
from weakhm.suites import lemma32_trials


def test_graph_examples():
    g = build_compatibility_graph(Space(2, 2), 1)
    assert len(g) == 3 and g.num_edges == 0
    g = build_compatibility_graph(Space(2, 3), 1)
    assert len(g) == 6
    i, j = g.vertices.index((0, 0, 2)), g.vertices.index((0, 1, 1))
    assert g.adjacent(i, j) and g.adjacent(j, i)
    assert build_compatibility_graph(Space(1, 2), 2).num_edges == 0


def test_graph_edges_match_agreement():
    g = build_compatibility_graph(Space(3, 4), 2)
    for i, u in enumerate(g.vertices):
        want = [j for j, v in enumerate(g.vertices) if j != i and agree(u, v) >= 2]
        assert g.neighbours(i) == want


def test_graph_vertex_cap():
    with pytest.raises(ResourceLimitError):
        build_compatibility_graph(Space(10, 5), 1, vertex_cap=100)


def test_max_examples():
    assert max_t_intersecting(Space(2, 2), 1).best_size == 1
    res = max_t_intersecting(Space(1, 5), 1)
    assert res.best_size >= 4 and res.optimal
    res = max_t_intersecting(Space(2, 3), 1, NO_T_FIXATION)
    assert res.best_size == brute_max_family(brute_space(2, 3), 1)[1] == 3
    assert is_t_intersecting(res.witness, 1)
    assert len(constant_coords(res.witness.members)) < 1


@pytest.mark.parametrize("n,l,t", [(2, 3, 1), (3, 3, 1), (2, 4, 1), (2, 4, 2), (3, 4, 2), (1, 6, 2)])
def test_matches_brute_force(n, l, t):
    best_any, best_free = brute_max_family(brute_space(n, l), t)
    assert max_t_intersecting(Space(n, l), t).best_size == best_any
    assert max_t_intersecting(Space(n, l), t, "nontrivial").best_size == best_free


def test_infeasible_constraint_gives_zero():
    # a single coordinate pair cannot avoid fixing two coordinates in P(n, 2)
    res = max_t_intersecting(Space(3, 2), 2, NO_T_FIXATION)
    assert res.best_size == 0 and res.optimal and len(res.witness) == 0


def test_determinism_and_workers():
    space = Space(3, 5)
    a = max_t_intersecting(space, 1, NO_T_FIXATION)
    b = max_t_intersecting(space, 1, NO_T_FIXATION)
    c = max_t_intersecting(space, 1, NO_T_FIXATION, workers=2)
    assert a.to_dict() == b.to_dict()
    assert (a.best_size, a.witness) == (c.best_size, c.witness)


def test_zero_budget_is_inconclusive():
    res = max_t_intersecting(Space(3, 5), 1, budget=0)
    assert res.budget_hit and not res.optimal


def test_all_optima():
    fams, complete = all_max_t_intersecting(Space(2, 3), 1, 3, NO_T_FIXATION)
    assert complete and fams
    for f in fams:
        assert len(f) == 3 and is_t_intersecting(f, 1) and not constant_coords(f.members)


def test_max_independent_examples():
    assert max_independent_subfamily(Family(Space(2, 2), tuple(brute_space(2, 2)))).best_size == 3
    assert max_independent_subfamily(Family(Space(3, 3), ((0, 1, 2), (0, 2, 1)))).best_size == 1
    assert max_independent_subfamily(Family(Space(3, 3))).best_size == 0


@pytest.mark.parametrize("n,l", [(3, 3), (4, 3), (2, 4), (3, 4)])
def test_max_independent_matches_brute_force(n, l):
    members = brute_space(n, l)
    res = max_independent_subfamily(Family(Space(n, l), tuple(members)))
    assert res.best_size == brute_max_independent(members)
    assert is_independent(res.witness)


def test_restrict_examples():
    full = Family(Space(2, 3), tuple(brute_space(2, 3)))
    sub, star = restrict_family(full, [1], [0])
    assert len(sub) == 3 and star.space == Space(2, 2) and list(star) == brute_space(2, 2)

    sub, star = restrict_family(Family(Space(2, 3), ((1, 1, 0),)), [2], [5])
    assert len(sub) == 0 and len(star) == 0

    hm = hm_extremal_family(3, 5, 1, [1])
    _, star = restrict_family(hm, [1], [0])
    assert len(star) == len(hm) - 1


def test_restrict_requires_ascending():
    with pytest.raises(ValueError):
        restrict_family(Family(Space(2, 3)), [2, 1], [0, 0])


def _close(members, space, t):
    for u in space:
        if u not in members and all(agree(u, v) >= t for v in members):
            members.append(u)
    return members


def test_lemma32_hand_built_pass():
    reduced = [(0, 1, 5), (1, 5, 0), (5, 0, 1), (2, 2, 2)]
    assert all(agree(a, b) == 0 for a in reduced for b in reduced if a != b)
    members = [(0, 0) + v for v in reduced]
    members = _close(members, brute_space(6, 5), 1)
    fam = Family(Space(6, 5), tuple(members))
    report = check_lemma32(fam, [1, 2], [0, 0], 1)
    assert report.status == PASS
    assert report.detail["independent_size"] >= 4
    assert report.lhs == report.rhs == len(fam)


def test_lemma32_hypothesis_not_met():
    fam = Family(Space(4, 5), ((0, 0, 4, 0, 0), (0, 0, 3, 1, 0)))
    report = check_lemma32(fam, [1, 2], [0, 0], 1)
    assert report.status == HYPOTHESIS_NOT_MET


def test_lemma32_rejects_bad_input():
    with pytest.raises(PreconditionError):
        check_lemma32(Family(Space(2, 3), ((0, 0, 2),)), [1, 2], [0, 0], 1)
    with pytest.raises(PreconditionError):
        check_lemma32(Family(Space(4, 4), ((1, 1, 1, 1), (0, 2, 0, 2))), [1, 2], [0, 0], 1)


def test_lemma32_random_trials_never_fail():
    reports = [check_lemma32(*trial) for trial in lemma32_trials(seed=7, trials=30)]
    assert not any(r.failed for r in reports)
    assert any(r.status == PASS for r in reports)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_search_finds_at_least_extremal(n):
    res = max_t_intersecting(Space(n, 5), 1, NO_T_FIXATION)
    assert res.optimal and res.best_size >= len(hm_extremal_family(n, 5, 1))
