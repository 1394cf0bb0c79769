"""Integer measures on small edges of the triangle, with boundary data.

A measure stores densities on the edges of the triangle plus the 3(r+1)
exterior stubs allowed by its chirality; the half-lines beyond the stubs
are implicit.  The balance condition at a point P reads

    m_0 - m_3 = m_4 - m_1 = m_2 - m_5

with ``m_k`` the density of the edge leaving P in direction k.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .trilattice import (
    Chirality,
    Edge,
    Point,
    edge,
    in_triangle,
    inner_edges,
    reflect_edge,
    stub_edge,
    stub_edges,
    triangle_points,
)


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; this signals a bug, not bad input."""


@dataclass(frozen=True)
class SetTriple:
    """A Schubert problem (n, I, J, K) with I, J, K increasing r-subsets of 1..n."""

    n: int
    I: tuple[int, ...]
    J: tuple[int, ...]
    K: tuple[int, ...]

    def __post_init__(self):
        for name in "IJK":
            s = tuple(int(v) for v in getattr(self, name))
            object.__setattr__(self, name, s)
            if any(a >= b for a, b in zip(s, s[1:])):
                raise ValueError(f"{name}={s} is not strictly increasing")
            if s and (s[0] < 1 or s[-1] > self.n):
                raise ValueError(f"{name}={s} is not a subset of 1..{self.n}")
        if not len(self.I) == len(self.J) == len(self.K):
            raise ValueError("I, J, K must have the same size")

    @property
    def r(self) -> int:
        return len(self.I)

    @property
    def sets(self) -> tuple[tuple[int, ...], ...]:
        return self.I, self.J, self.K

    def trace_ok(self) -> bool:
        r = self.r
        total = sum(v - l for s in self.sets for l, v in enumerate(s, 1))
        return total == 2 * r * (self.n - r)

    def as_json(self) -> dict:
        return {"n": self.n, "I": list(self.I), "J": list(self.J), "K": list(self.K)}

    @classmethod
    def from_json(cls, data: Mapping) -> "SetTriple":
        return cls(int(data["n"]), tuple(data["I"]), tuple(data["J"]), tuple(data["K"]))

    def __str__(self):
        fmt = lambda s: "{" + ",".join(map(str, s)) + "}"
        return f"n={self.n} I={fmt(self.I)} J={fmt(self.J)} K={fmt(self.K)}"


@dataclass(frozen=True)
class BoundaryData:
    r: int
    chirality: Chirality
    omega: int
    alpha: tuple[int, ...]
    beta: tuple[int, ...]
    gamma: tuple[int, ...]

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            vec = tuple(int(v) for v in getattr(self, name))
            object.__setattr__(self, name, vec)
            if len(vec) != self.r:
                raise ValueError(f"{name} must have length r={self.r}")
            if any(a > b for a, b in zip(vec, vec[1:])):
                raise ValueError(f"{name}={vec} is not nondecreasing")
            if vec and (vec[0] < 0 or vec[-1] > self.omega):
                raise ValueError(f"{name}={vec} leaves [0, {self.omega}]")

    @property
    def sides(self) -> tuple[tuple[int, ...], ...]:
        return self.alpha, self.beta, self.gamma


@dataclass(frozen=True, eq=False)
class TriMeasure:
    r: int
    chirality: Chirality
    densities: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be at least 1")
        allowed_stubs = stub_edges(self.r, self.chirality)
        clean = {}
        for e, d in self.densities.items():
            e = edge(Point(*e[0]), e[1])
            d = int(d)
            if d < 0:
                raise ValueError(f"negative density {d} on {e}")
            a, b = e.ends
            if not (in_triangle(a, self.r) and in_triangle(b, self.r)) and e not in allowed_stubs:
                raise ValueError(f"edge {e} is outside the domain of a {self.chirality.value} measure")
            if d:
                clean[e] = clean.get(e, 0) + d
        object.__setattr__(self, "densities", dict(sorted(clean.items())))

    def __getitem__(self, e: Edge) -> int:
        return self.densities.get(e, 0)

    def at(self, p: Point, k: int) -> int:
        return self.densities.get(edge(p, k), 0)

    def around(self, p: Point) -> list[int]:
        return [self.at(p, k) for k in range(6)]

    @property
    def support(self) -> frozenset[Edge]:
        return frozenset(self.densities)

    def is_zero(self) -> bool:
        return not self.densities

    def __eq__(self, other):
        if not isinstance(other, TriMeasure):
            return NotImplemented
        return (self.r, self.chirality, self.densities) == (other.r, other.chirality, other.densities)

    def __hash__(self):
        return hash((self.r, self.chirality, frozenset(self.densities.items())))

    def __le__(self, other: "TriMeasure") -> bool:
        _check_compatible(self, other)
        return all(other[e] >= d for e, d in self.densities.items())

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return subtract(self, other)

    def __repr__(self):
        return f"TriMeasure(r={self.r}, {self.chirality.value}, {len(self.densities)} edges, weight={weight(self)})"

    def as_json(self) -> dict:
        return {
            "r": self.r,
            "chirality": self.chirality.value,
            "edges": [dict(e.as_json(), density=d) for e, d in self.densities.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "TriMeasure":
        if isinstance(data, str):
            data = json.loads(data)
        dens = {Edge(Point(int(e["x"]), int(e["y"])), int(e["axis"])): int(e["density"]) for e in data["edges"]}
        for e in dens:
            if not 0 <= e.axis <= 2:
                raise ValueError("edges must use canonical axes 0..2")
        return cls(int(data["r"]), Chirality(data["chirality"]), dens)


def zero_measure(r: int, chirality: Chirality = Chirality.PLUS) -> TriMeasure:
    return TriMeasure(r, chirality, {})


def measure_from_paths(r: int, chirality: Chirality, weighted_edges: Iterable[tuple[Point, Point, int]]) -> TriMeasure:
    """Build a measure from (P, Q, density) triples of adjacent points."""
    from .trilattice import direction

    dens: dict[Edge, int] = {}
    for p, q, d in weighted_edges:
        e = edge(Point(*p), direction(p, q))
        dens[e] = dens.get(e, 0) + d
    return TriMeasure(r, chirality, dens)


def balance_defect(m: TriMeasure, p: Point) -> tuple[int, int, int]:
    a = m.around(p)
    return a[0] - a[3], a[4] - a[1], a[2] - a[5]


def validate(m: TriMeasure) -> list[Point]:
    """Points of the triangle where balance fails; empty means the measure is valid."""
    bad = []
    for p in triangle_points(m.r):
        d0, d1, d2 = balance_defect(m, p)
        if not d0 == d1 == d2:
            bad.append(p)
    return bad


def is_valid(m: TriMeasure) -> bool:
    return not validate(m)


def stub_masses(m: TriMeasure) -> dict[str, list[int]]:
    """Stub densities per side, indexed by j = 0..r."""
    return {s: [m[stub_edge(s, j, m.r, m.chirality)] for j in range(m.r + 1)] for s in "ABC"}


def weight(m: TriMeasure) -> int:
    sums = {s: sum(v) for s, v in stub_masses(m).items()}
    if len(set(sums.values())) != 1:
        raise InvariantViolation(f"side sums differ: {sums}")
    return sums["A"]


def boundary(m: TriMeasure) -> BoundaryData:
    stubs = stub_masses(m)
    omega = weight(m)
    r = m.r
    vecs = []
    for s in "ABC":
        a = stubs[s]
        if m.chirality is Chirality.PLUS:
            vecs.append(tuple(sum(a[:l]) for l in range(1, r + 1)))
        else:
            vecs.append(tuple(sum(a[r + 1 - l:]) for l in range(1, r + 1)))
    return BoundaryData(r, m.chirality, omega, *vecs)


def stubs_from_boundary(b: BoundaryData) -> dict[Edge, int]:
    """Invert the cumulative sums: the stub densities a boundary prescribes."""
    r = b.r
    out = {}
    for side, vec in zip("ABC", b.sides):
        full = (0,) + vec + (b.omega,)
        diffs = [full[i + 1] - full[i] for i in range(r + 1)]
        if b.chirality is Chirality.PLUS:
            per_j = diffs
        else:
            per_j = diffs[::-1]
        for j, d in enumerate(per_j):
            out[stub_edge(side, j, r, b.chirality)] = d
    return out


def sets_from_boundary(b: BoundaryData) -> SetTriple:
    n = b.r + b.omega
    sets = [tuple(a + l for l, a in enumerate(vec, 1)) for vec in b.sides]
    return SetTriple(n, *sets)


def boundary_from_sets(s: SetTriple, chirality: Chirality = Chirality.PLUS) -> BoundaryData:
    r = s.r
    vecs = [tuple(v - l for l, v in enumerate(seq, 1)) for seq in s.sets]
    return BoundaryData(r, chirality, s.n - r, *vecs)


def sets_of(m: TriMeasure) -> SetTriple:
    return sets_from_boundary(boundary(m))


def attachment_count(m: TriMeasure) -> int:
    """Number of chamber facets (alpha_l = alpha_{l+1}, alpha_r = omega, ...) the boundary misses."""
    b = boundary(m)
    count = 0
    for vec in b.sides:
        count += sum(1 for a, c in zip(vec, vec[1:]) if a != c)
        count += vec[-1] != b.omega
    return count


def _check_compatible(m1: TriMeasure, m2: TriMeasure) -> None:
    if m1.r != m2.r or m1.chirality is not m2.chirality:
        raise ValueError("measures differ in size or chirality")


def add(m1: TriMeasure, m2: TriMeasure) -> TriMeasure:
    _check_compatible(m1, m2)
    dens = dict(m1.densities)
    for e, d in m2.densities.items():
        dens[e] = dens.get(e, 0) + d
    return TriMeasure(m1.r, m1.chirality, dens)


def scale(m: TriMeasure, c: int) -> TriMeasure:
    if c < 0:
        raise ValueError("scale factor must be nonnegative")
    return TriMeasure(m.r, m.chirality, {e: c * d for e, d in m.densities.items()})


def subtract(m1: TriMeasure, m2: TriMeasure) -> TriMeasure:
    _check_compatible(m1, m2)
    dens = dict(m1.densities)
    for e, d in m2.densities.items():
        left = dens.get(e, 0) - d
        if left < 0:
            raise ValueError(f"subtraction leaves negative density on {e}")
        dens[e] = left
    return TriMeasure(m1.r, m1.chirality, dens)


def reflect(m: TriMeasure) -> TriMeasure:
    """Mirror image in the bisector at A_0; swaps PLUS and STAR.

    The boundary (alpha, beta, gamma) becomes (gamma, beta, alpha).
    """
    return TriMeasure(m.r, m.chirality.flipped, {reflect_edge(e): d for e, d in m.densities.items()})


def all_domain_edges(r: int, chirality: Chirality) -> list[Edge]:
    return inner_edges(r) + sorted(stub_edges(r, chirality))
