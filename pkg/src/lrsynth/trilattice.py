"""Coordinates on the triangular lattice and the triangle of side r.

A lattice point ``(x, y)`` stands for ``x*u + y*v`` where ``u`` points at 0
degrees, ``v`` at 120 degrees and ``w = -u - v`` at 240 degrees.  The six
unit steps are indexed counterclockwise starting from ``u``::

    0: u = (1, 0)      1: -w = (1, 1)     2: v = (0, 1)
    3: -u = (-1, 0)    4: w = (-1, -1)    5: -v = (0, -1)

The triangle of side ``r`` has vertices ``0``, ``r*u`` and ``r*u + r*v``;
in these coordinates it is ``{(x, y) : 0 <= y <= x <= r}``.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterator, NamedTuple

STEPS = ((1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1))

# Rotating by one step is +60 degrees (counterclockwise).
CW = -1
CCW = 1


class Point(NamedTuple):
    x: int
    y: int

    def step(self, k: int, t: int = 1) -> "Point":
        dx, dy = STEPS[k % 6]
        return Point(self.x + t * dx, self.y + t * dy)


class Edge(NamedTuple):
    """Undirected small edge from ``base`` to ``base + STEPS[axis]``, axis in 0..2."""

    base: Point
    axis: int

    @property
    def ends(self) -> tuple[Point, Point]:
        return self.base, self.base.step(self.axis)

    def other(self, p: Point) -> Point:
        a, b = self.ends
        if p == a:
            return b
        if p == b:
            return a
        raise ValueError(f"{p} is not an endpoint of {self}")

    def as_json(self) -> dict:
        return {"x": self.base.x, "y": self.base.y, "axis": self.axis}


class Chirality(Enum):
    PLUS = "plus"
    STAR = "star"

    @property
    def flipped(self) -> "Chirality":
        return Chirality.STAR if self is Chirality.PLUS else Chirality.PLUS

    @property
    def clockwise(self) -> int:
        """Rotation step meaning "clockwise" for this chirality."""
        return CW if self is Chirality.PLUS else -CW


def rotate(k: int, t: int) -> int:
    return (k + t) % 6


def opposite(k: int) -> int:
    return (k + 3) % 6


def edge(p: Point, k: int) -> Edge:
    """Canonical form of the edge leaving ``p`` in direction ``k``."""
    k %= 6
    p = Point(*p)
    if k < 3:
        return Edge(p, k)
    return Edge(p.step(k), k - 3)


def direction(p: Point, q: Point) -> int:
    """Direction index of the step p -> q (they must be nearest neighbours)."""
    d = (q[0] - p[0], q[1] - p[1])
    try:
        return STEPS.index(d)
    except ValueError:
        raise ValueError(f"{p} and {q} are not adjacent") from None


def incident_edges(p: Point) -> list[tuple[int, Edge]]:
    return [(k, edge(p, k)) for k in range(6)]


def in_triangle(p: Point, r: int) -> bool:
    return 0 <= p[1] <= p[0] <= r


def triangle_points(r: int) -> Iterator[Point]:
    """Points of the triangle in raster order: increasing y, then x."""
    for y in range(r + 1):
        for x in range(y, r + 1):
            yield Point(x, y)


def inner_edges(r: int) -> list[Edge]:
    """All small edges with both endpoints in the triangle, sorted."""
    out = []
    for p in triangle_points(r):
        for k in range(3):
            if in_triangle(p.step(k), r):
                out.append(Edge(p, k))
    return sorted(out)


def corner_a(j: int, r: int) -> Point:
    return Point(j, 0)


def corner_b(j: int, r: int) -> Point:
    return Point(r, j)


def corner_c(j: int, r: int) -> Point:
    # read as -(r-j)w so that C_0 = B_r and C_r = A_0
    return Point(r - j, r - j)


SIDE_POINT = {"A": corner_a, "B": corner_b, "C": corner_c}
# exterior stub directions per side: (plus, star)
SIDE_STUB_DIR = {"A": (4, 5), "B": (0, 1), "C": (2, 3)}


def side_point(side: str, j: int, r: int) -> Point:
    if side not in SIDE_POINT:
        raise ValueError(f"unknown side {side!r}")
    if r < 1 or not 0 <= j <= r:
        raise ValueError(f"index {j} out of range for r={r}")
    return SIDE_POINT[side](j, r)


def stub_edge(side: str, j: int, r: int, chirality: Chirality) -> Edge:
    """The exterior edge at the j-th point of ``side`` carrying exported mass.

    PLUS stubs are A_jX_j, B_jY_j, C_jZ_j; STAR stubs are A_jX_{j+1},
    B_jY_{j+1}, C_jZ_{j+1}.
    """
    p = side_point(side, j, r)
    plus_dir, star_dir = SIDE_STUB_DIR[side]
    return edge(p, plus_dir if chirality is Chirality.PLUS else star_dir)


def stub_edges(r: int, chirality: Chirality) -> dict[Edge, tuple[str, int]]:
    return {stub_edge(s, j, r, chirality): (s, j) for s in "ABC" for j in range(r + 1)}


def reflect_point(p: Point) -> Point:
    """Reflection in the bisector of the triangle at A_0; maps the triangle to itself."""
    return Point(p[0], p[0] - p[1])


def reflect_dir(k: int) -> int:
    return (1 - k) % 6


def reflect_edge(e: Edge) -> Edge:
    return edge(reflect_point(e.base), reflect_dir(e.axis))
