import pytest

from helpers import census_measures, w1, w2
from lrsynth.measure import add, boundary, scale, validate
from lrsynth.rigidity import is_rigid
from lrsynth.skeleton import decompose, descendance_graph, is_extremal, mu_of_root, precedes0, roots, step_rel
from lrsynth.trilattice import Point, edge


def rigid_census(n_max):
    return [m for _, count, m in census_measures(n_max) if count == 1 and not m.is_zero()]


def test_step_rel_examples():
    m = w2()
    stub = edge(Point(1, 0), 4)
    diag = edge(Point(1, 0), 1)
    assert step_rel(m, stub, diag)
    from lrsynth.measure import measure_from_paths
    from lrsynth.trilattice import Chirality

    sixty = measure_from_paths(2, Chirality.PLUS, [((1, 0), (2, 0), 1), ((1, 0), (2, 1), 1)])
    assert not step_rel(sixty, edge(Point(1, 0), 0), edge(Point(1, 0), 1))
    assert not step_rel(sixty, edge(Point(1, 0), 1), edge(Point(1, 0), 0))


def test_step_rel_needs_a_shared_point():
    with pytest.raises(ValueError):
        step_rel(w2(), edge(Point(1, 0), 4), edge(Point(2, 2), 2))


def test_descendance_never_decreases_density():
    for _, _, m in census_measures(5):
        g = descendance_graph(m)
        for e, f in g.edges:
            assert m[e] <= m[f]


def test_roots_examples():
    assert len(roots(w1())) == 1
    assert len(roots(add(w1(), w2()))) == 2
    assert roots(scale(w1(), 5)) == roots(w1())


def test_roots_reject_non_rigid_measures():
    from lrsynth.hive_enum import enumerate_measures
    from lrsynth.measure import SetTriple, boundary_from_sets

    m = enumerate_measures(boundary_from_sets(SetTriple(6, (2, 4, 6), (2, 4, 6), (2, 4, 6))))[0]
    with pytest.raises(ValueError):
        roots(m)


def test_mu_of_root_examples():
    (e,) = roots(w1())
    assert mu_of_root(w1(), e) == w1()
    (f,) = roots(scale(w2(), 3))
    assert mu_of_root(scale(w2(), 3), f) == w2()


def test_every_support_edge_descends_from_a_root():
    import networkx as nx

    for m in rigid_census(5):
        g = descendance_graph(m)
        reach = set()
        for e in roots(m):
            reach |= {e} | nx.descendants(g, e)
        assert reach == set(m.support)


def test_mu_is_bounded_by_the_measure():
    for m in rigid_census(5):
        for e in roots(m):
            mu = mu_of_root(m, e)
            assert mu[e] == 1
            assert all(mu[f] * m[e] <= m[f] for f in mu.support)


def test_decompose_examples():
    d = decompose(w2())
    assert len(d.components) == 1 and d.components[0].coeff == 1
    d = decompose(scale(w1(), 2))
    assert len(d.components) == 1 and d.components[0].coeff == 2
    d = decompose(add(w1(), w2()))
    assert [c.coeff for c in d.components] == [1, 1]
    assert {c.mu for c in d.components} == {w1(), w2()}


def test_w1_and_w2_are_unrelated_by_precedence():
    # at the shared point (2,1) W2 has a branch point and no straight line
    assert not precedes0(w1(), w2())
    assert not precedes0(w2(), w1())
    assert decompose(add(w1(), w2())).relation == []


def test_precedes0_trivial_cases():
    assert not precedes0(w2(), w2())
    assert not precedes0(w1(), w1())
    far = scale(w1(), 1)
    from lrsynth.measure import measure_from_paths
    from lrsynth.trilattice import Chirality

    left = measure_from_paths(2, Chirality.PLUS, [((0, 0), (-1, -1), 1), ((0, 0), (1, 1), 1)])
    assert not precedes0(left, far)


def test_decomposition_properties():
    related = 0
    for m in rigid_census(5):
        d = decompose(m)
        total = None
        for c in d.components:
            assert is_extremal(c.mu) and is_rigid(c.mu) and not validate(c.mu)
            total = c.measure if total is None else add(total, c.measure)
        assert total == m
        assert all(i < j for i, j in d.relation)
        related += bool(d.relation)
    assert related > 0


def test_precedence_json():
    data = decompose(add(w1(), w2())).as_json()
    assert [c["coeff"] for c in data["components"]] == [1, 1]
    assert data["precedes0"] == []
