"""Shared builders and cached census data for the test suite."""

from __future__ import annotations

from functools import lru_cache

from lrsynth.hive_enum import all_triples, enumerate_measures, lr_coeff, unique_measure
from lrsynth.measure import SetTriple, boundary_from_sets, measure_from_paths
from lrsynth.trilattice import Chirality

PLUS = Chirality.PLUS


def w1():
    """r = 2: Y-vertex at B_0 feeding A_2X_2, B_0Y_0 and the B side up to C_0Z_0."""
    return measure_from_paths(2, PLUS, [
        ((2, 0), (1, -1), 1), ((2, 0), (3, 0), 1), ((2, 0), (2, 1), 1),
        ((2, 1), (2, 2), 1), ((2, 2), (2, 3), 1),
    ])


def w2():
    """r = 2: Y-vertex at (2,1) with legs to A_1, B_1Y_1 and C_0Z_0."""
    return measure_from_paths(2, PLUS, [
        ((1, 0), (0, -1), 1), ((1, 0), (2, 1), 1), ((2, 1), (3, 1), 1),
        ((2, 1), (2, 2), 1), ((2, 2), (2, 3), 1),
    ])


def w3():
    """The tripod of n = 4, I = J = K = {1,3,4}."""
    return unique_measure(boundary_from_sets(SetTriple(4, (1, 3, 4), (1, 3, 4), (1, 3, 4))))


@lru_cache(maxsize=None)
def feasible(n: int) -> tuple[SetTriple, ...]:
    """Triples of 1..n with r >= 1 and c > 0."""
    return tuple(s for s in all_triples(n) if s.r and lr_coeff(s) > 0)


@lru_cache(maxsize=None)
def census(n_max: int) -> tuple:
    """(triple, measures) for every feasible triple with 1 <= n <= n_max."""
    out = []
    for n in range(1, n_max + 1):
        for s in feasible(n):
            out.append((s, tuple(enumerate_measures(boundary_from_sets(s, PLUS)))))
    return tuple(out)


def census_measures(n_max: int):
    for s, ms in census(n_max):
        for m in ms:
            yield s, len(ms), m


def c_one(n: int) -> list[SetTriple]:
    return [s for s in feasible(n) if lr_coeff(s) == 1]
