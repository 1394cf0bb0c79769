"""Rigidity of a measure read off its support: no point where all six edges
meet, and no evil loop.

Angles "k degrees clockwise from AB" are measured at B, starting from the
ray B->A.  Clockwise is rotation by ``chirality.clockwise`` steps, so STAR
measures see every clockwise predicate mirrored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .measure import TriMeasure
from .trilattice import Chirality, Point, direction, edge, in_triangle, triangle_points


def _in_support(m: TriMeasure, p: Point, k: int) -> bool:
    return m.at(p, k) > 0


def is_evil_turn(m: TriMeasure, a: Point, b: Point, c: Point) -> bool:
    """Whether A -> B -> C is one of the five evil turn configurations."""
    back = direction(b, a)
    out = direction(b, c)
    cw = m.chirality.clockwise

    def cw_from_ab(steps: int) -> int:
        return (back + cw * steps) % 6

    def present(*steps: int) -> bool:
        return all(_in_support(m, b, cw_from_ab(s)) for s in steps)

    if c == a:
        return present(2, 3, 4)
    if out == cw_from_ab(2):
        return True
    if out == (back + 3) % 6:
        return True
    if out == cw_from_ab(-2):
        return present(2)
    if out == cw_from_ab(-1):
        return present(2, 3)
    return False


def six_edge_points(m: TriMeasure) -> list[Point]:
    return [p for p in triangle_points(m.r) if all(m.around(p))]


@dataclass(frozen=True)
class Witness:
    kind: str  # "six-edge" or "evil-loop"
    points: tuple[Point, ...]

    def as_json(self) -> dict:
        return {"kind": self.kind, "points": [list(p) for p in self.points]}


def turn_graph(m: TriMeasure) -> dict[tuple[Point, Point], list[tuple[Point, Point]]]:
    """Directed support edges inside the triangle, joined when they form an evil turn."""
    r = m.r
    nodes = []
    for e in m.support:
        p, q = e.ends
        if in_triangle(p, r) and in_triangle(q, r):
            nodes.append((p, q))
            nodes.append((q, p))
    nodes.sort()
    graph = {}
    for p, q in nodes:
        succ = []
        for k in range(6):
            s = q.step(k)
            if in_triangle(s, r) and m.at(q, k) > 0 and is_evil_turn(m, p, q, s):
                succ.append((q, s))
        graph[(p, q)] = succ
    return graph


def _find_cycle(graph) -> list | None:
    color = dict.fromkeys(graph, 0)
    for root in graph:
        if color[root]:
            continue
        stack = [(root, iter(graph[root]))]
        path = [root]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[node] = 2
                stack.pop()
                path.pop()
                continue
            if color[nxt] == 1:
                return path[path.index(nxt):]
            if color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(graph[nxt])))
                path.append(nxt)
    return None


def find_witness(m: TriMeasure) -> Witness | None:
    """A six-edge point or an evil loop in the support, or None if m is rigid."""
    if m.is_zero():
        raise ValueError("rigidity is not defined for the zero measure")
    six = six_edge_points(m)
    if six:
        return Witness("six-edge", (six[0],))
    cycle = _find_cycle(turn_graph(m))
    if cycle is None:
        return None
    return Witness("evil-loop", tuple(p for p, _ in cycle))


def is_rigid(m: TriMeasure) -> bool:
    return find_witness(m) is None


def loop_is_evil(m: TriMeasure, points) -> bool:
    """Check a closed point sequence turn by turn (cyclically)."""
    pts = list(points)
    k = len(pts)
    if k < 2:
        return False
    for i in range(k):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % k]
        if m.at(b, direction(b, c)) == 0 or not is_evil_turn(m, a, b, c):
            return False
    return True
