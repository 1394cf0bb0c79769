"""Descendance between support edges of a rigid measure, root edges, the
path-count measures they generate, and the precedence order between the
resulting extremal components."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from .measure import InvariantViolation, TriMeasure, add, scale, validate
from .rigidity import is_rigid
from .trilattice import Edge, Point, direction, edge, in_triangle, triangle_points

PATH_CAP = 200_000


def _shared_point(e: Edge, f: Edge) -> Point:
    common = set(e.ends) & set(f.ends)
    if e == f or len(common) != 1:
        raise ValueError(f"{e} and {f} do not share exactly one endpoint")
    return common.pop()


def step_rel(m: TriMeasure, e: Edge, f: Edge) -> bool:
    """The relation e ->_m f between two support edges meeting at a point B."""
    b = _shared_point(e, f)
    de = direction(b, e.other(b))
    df = direction(b, f.other(b))
    if (df - de) % 6 in (2, 4):
        return m.at(b, de + 3) == 0
    if df == (de + 3) % 6:
        return m.at(b, df + 1) == 0 or m.at(b, df - 1) == 0
    return False


def _successors(m: TriMeasure, e: Edge, head: Point) -> list[tuple[Edge, Point]]:
    """Edges f at ``head`` with e -> f, paired with the far end of f."""
    out = []
    for k in range(6):
        f = edge(head, k)
        if f != e and m[f] > 0 and step_rel(m, e, f):
            out.append((f, f.other(head)))
    return out


def descendance_graph(m: TriMeasure) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(m.support)
    for e in m.support:
        for p in e.ends:
            for f, _ in _successors(m, e, p):
                g.add_edge(e, f)
    return g


def roots(m: TriMeasure) -> list[Edge]:
    """One representative (the smallest edge) per minimal descendance class."""
    if m.is_zero():
        raise ValueError("the zero measure has no roots")
    if not is_rigid(m):
        raise ValueError("roots are only defined here for rigid measures")
    g = descendance_graph(m)
    cond = nx.condensation(g)
    reps = [min(cond.nodes[c]["members"]) for c in cond.nodes if cond.in_degree(c) == 0]
    return sorted(reps)


def mu_of_root(m: TriMeasure, e: Edge, cap: int = PATH_CAP) -> TriMeasure:
    """Count descendance paths from e (either orientation) to every support edge."""
    counts: dict[Edge, int] = {e: 1}
    steps = 0
    for start in e.ends:
        head = e.other(start)
        stack = [(e, head, frozenset([e]))]
        while stack:
            cur, at, used = stack.pop()
            for f, far in _successors(m, cur, at):
                if f in used:
                    continue
                steps += 1
                if steps > cap:
                    raise InvariantViolation(f"descendance path count exceeded {cap}")
                counts[f] = counts.get(f, 0) + 1
                stack.append((f, far, used | {f}))
    counts[e] = 1
    return TriMeasure(m.r, m.chirality, counts)


def null_dimension(m: TriMeasure) -> int:
    """Dimension of the space of balanced densities supported on supp(m)."""
    edges = sorted(m.support)
    col = {e: i for i, e in enumerate(edges)}
    rows = []
    for p in triangle_points(m.r):
        coef = [{}, {}, {}]
        # differences m0-m3, m4-m1, m2-m5 as sparse rows
        for slot, (plus, minus) in enumerate(((0, 3), (4, 1), (2, 5))):
            for k, sgn in ((plus, 1), (minus, -1)):
                e = edge(p, k)
                if e in col:
                    coef[slot][col[e]] = coef[slot].get(col[e], 0) + sgn
        for a, b in ((0, 1), (1, 2)):
            row = dict(coef[a])
            for i, v in coef[b].items():
                row[i] = row.get(i, 0) - v
            row = {i: v for i, v in row.items() if v}
            if row:
                rows.append(row)
    return len(edges) - _rank(rows, len(edges))


def _rank(rows: list[dict[int, int]], ncols: int) -> int:
    mat = [[Fraction(row.get(j, 0)) for j in range(ncols)] for row in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pr = mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][c] != 0:
                f = mat[i][c] / pr[c]
                mat[i] = [x - f * y for x, y in zip(mat[i], pr)]
        rank += 1
    return rank


def is_extremal(m: TriMeasure) -> bool:
    return not m.is_zero() and null_dimension(m) == 1


def _lines_through(m: TriMeasure, p: Point) -> list[int]:
    return [k for k in range(3) if m.at(p, k) > 0 and m.at(p, k + 3) > 0]


def precedes0(s1: TriMeasure, s2: TriMeasure) -> bool:
    """S1 has a straight line AXB and S2 a straight line CXD through a common
    point X with XA 60 degrees clockwise from XC."""
    cw = s1.chirality.clockwise
    for p in triangle_points(s1.r):
        l1 = _lines_through(s1, p)
        if not l1:
            continue
        for a in l1:
            for c in _lines_through(s2, p):
                if (a - c - cw) % 3 == 0:
                    return True
    return False


@dataclass(frozen=True)
class ExtremalComponent:
    root: Edge
    mu: TriMeasure
    coeff: int

    @property
    def measure(self) -> TriMeasure:
        return scale(self.mu, self.coeff)


@dataclass(frozen=True)
class Precedence:
    components: list[ExtremalComponent]
    relation: list[tuple[int, int]] = field(default_factory=list)  # (i, j): component i precedes0 j

    def as_json(self) -> dict:
        return {
            "components": [
                {"order": i, "root": c.root.as_json(), "coeff": c.coeff, "mu": c.mu.as_json()}
                for i, c in enumerate(self.components)
            ],
            "precedes0": [list(p) for p in self.relation],
        }


def decompose(m: TriMeasure) -> Precedence:
    """Write a rigid measure as sum of m(e) * mu_e over inequivalent roots, ordered
    so that a component preceding another comes first."""
    comps = [ExtremalComponent(e, mu_of_root(m, e), m[e]) for e in roots(m)]
    total = None
    for c in comps:
        if validate(c.mu):
            raise InvariantViolation(f"mu of root {c.root} is not balanced")
        total = c.measure if total is None else add(total, c.measure)
    if total != m:
        raise InvariantViolation("sum of extremal components does not reproduce the measure")
    g = nx.DiGraph()
    g.add_nodes_from(range(len(comps)))
    for i, ci in enumerate(comps):
        for j, cj in enumerate(comps):
            if i != j and precedes0(ci.mu, cj.mu):
                g.add_edge(i, j)
    if not nx.is_directed_acyclic_graph(g):
        raise InvariantViolation("precedence relation between components has a cycle")
    order = list(nx.lexicographical_topological_sort(g, key=lambda i: comps[i].root))
    pos = {old: new for new, old in enumerate(order)}
    ordered = [comps[i] for i in order]
    rel = sorted((pos[i], pos[j]) for i, j in g.edges)
    return Precedence(ordered, rel)
