from collections import defaultdict

import pytest

from helpers import PLUS, census_measures, w1, w2
from lrsynth.hive_enum import enumerate_measures
from lrsynth.measure import SetTriple, boundary, boundary_from_sets, measure_from_paths, reflect, zero_measure
from lrsynth.rigidity import find_witness, is_evil_turn, is_rigid, loop_is_evil, six_edge_points
from lrsynth.trilattice import Point

A, B = Point(1, 0), Point(2, 1)


def path(*pts):
    return measure_from_paths(3, PLUS, [(p, q, 1) for p, q in zip(pts, pts[1:])])


def test_straight_continuation_is_evil():
    assert is_evil_turn(path(A, B, Point(3, 2)), A, B, Point(3, 2))


def test_clockwise_120_turn_is_evil():
    # at B the ray back to A points along w; 120 degrees clockwise from it is v
    assert is_evil_turn(path(A, B, Point(2, 2)), A, B, Point(2, 2))


def test_counterclockwise_120_turn_without_clockwise_edge_is_not_evil():
    assert not is_evil_turn(path(A, B, Point(3, 1)), A, B, Point(3, 1))
    # adding the clockwise 120 edge at B turns it into case 4
    m = measure_from_paths(3, PLUS, [(A, B, 1), (B, Point(3, 1), 1), (B, Point(2, 2), 1)])
    assert is_evil_turn(m, A, B, Point(3, 1))


def test_star_chirality_mirrors_the_predicate():
    m = path(A, B, Point(2, 2))
    mirrored = reflect(m)
    from lrsynth.trilattice import reflect_point as rp

    assert is_evil_turn(mirrored, rp(A), rp(B), rp(Point(2, 2)))
    n = path(A, B, Point(3, 1))
    assert not is_evil_turn(reflect(n), rp(A), rp(B), rp(Point(3, 1)))


def test_base_measures_are_rigid():
    assert is_rigid(w1()) and is_rigid(w2())


def test_two_measures_of_246_are_not_rigid():
    ms = enumerate_measures(boundary_from_sets(SetTriple(6, (2, 4, 6), (2, 4, 6), (2, 4, 6))))
    assert len(ms) == 2
    for m in ms:
        assert not is_rigid(m)
    kinds = {find_witness(m).kind for m in ms}
    assert "six-edge" in kinds
    for m in ms:
        w = find_witness(m)
        if w.kind == "six-edge":
            assert all(m.around(w.points[0]))


def test_zero_measure_is_rejected():
    with pytest.raises(ValueError):
        find_witness(zero_measure(2))


def test_witness_loops_are_evil_and_support_at_six_edge_points_is_full():
    seen = 0
    for _, _, m in census_measures(6):
        if m.is_zero():
            continue
        w = find_witness(m)
        if w is None:
            assert not six_edge_points(m)
        elif w.kind == "evil-loop":
            assert loop_is_evil(m, w.points)
            seen += 1
    assert seen > 0


def test_rigidity_is_inherited_by_smaller_supports():
    by_r = defaultdict(list)
    for _, _, m in census_measures(5):
        if not m.is_zero():
            by_r[m.r].append((m.support, is_rigid(m)))
    for items in by_r.values():
        rigid_supports = [s for s, ok in items if ok]
        for s1, ok1 in items:
            if not ok1:
                assert not any(s1 <= s2 for s2 in rigid_supports)
