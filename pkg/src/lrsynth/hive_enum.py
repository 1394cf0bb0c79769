"""Enumeration of integer measures with prescribed boundary, LR coefficients,
the recursive Horn test, and honeycombs built from measures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .measure import (
    BoundaryData,
    InvariantViolation,
    SetTriple,
    TriMeasure,
    boundary,
    boundary_from_sets,
    is_valid,
    stubs_from_boundary,
)
from .trilattice import Chirality, Edge, Point, edge, in_triangle, inner_edges, triangle_points


def _sweep_plan(r: int, stubs: dict[Edge, int]):
    """Per point, in raster order: (in_slots, out_slots).

    A slot is either ("fixed", value) or ("var", index) where index numbers the
    inner edges.  Incoming directions are 3, 4, 5; outgoing 0, 1, 2.
    """
    index = {e: i for i, e in enumerate(inner_edges(r))}
    plan = []
    for p in triangle_points(r):
        slots = []
        for k in range(6):
            e = edge(p, k)
            if e in index:
                slots.append(("var", index[e]))
            else:
                # stub of this chirality or a forbidden exterior edge
                slots.append(("fixed", stubs.get(e, 0)))
        plan.append((slots[3:], slots[:3]))
    return index, plan


def _search(r: int, stubs: dict[Edge, int], bound: int, limit: int | None = None):
    index, plan = _sweep_plan(r, stubs)
    values = [0] * len(index)
    found: list[list[int]] = []

    def read(slot):
        kind, v = slot
        return v if kind == "fixed" else values[v]

    def go(i: int) -> bool:
        if i == len(plan):
            found.append(list(values))
            return limit is not None and len(found) >= limit
        ins, outs = plan[i]
        m3, m4, m5 = (read(s) for s in ins)
        base = (m3, m4, m5)
        # out_k = base_k + sign_k * t  with m0 = m3 + t, m1 = m4 - t, m2 = m5 + t
        signs = (1, -1, 1)
        t_fixed = None
        for (kind, v), b0, sg in zip(outs, base, signs):
            if kind == "fixed":
                t = (v - b0) * sg
                if t_fixed is None:
                    t_fixed = t
                elif t != t_fixed:
                    return False
        if t_fixed is not None:
            lo = hi = t_fixed
        else:
            lo = max(-m3, -m5, m4 - bound)
            hi = min(m4, bound - m3, bound - m5)
        for t in range(lo, hi + 1):
            ok = True
            for (kind, v), b0, sg in zip(outs, base, signs):
                val = b0 + sg * t
                if kind == "var":
                    if val < 0 or val > bound:
                        ok = False
                        break
                    values[v] = val
            if ok and go(i + 1):
                return True
        return False

    go(0)
    edges = list(index)
    return edges, found


def enumerate_measures(b: BoundaryData, bound: int | None = None, limit: int | None = None) -> list[TriMeasure]:
    """All integer measures with boundary ``b``, sorted by their edge lists.

    Densities on inner edges are searched in ``[0, bound]`` (default: the
    weight).  ``limit`` stops the search after that many hits.
    """
    stubs = stubs_from_boundary(b)
    if any(v < 0 for v in stubs.values()):
        return []
    if bound is None:
        bound = b.omega
    edges, found = _search(b.r, stubs, bound, limit)
    out = []
    for vals in found:
        dens = {e: v for e, v in zip(edges, vals) if v}
        dens.update({e: v for e, v in stubs.items() if v})
        m = TriMeasure(b.r, b.chirality, dens)
        if not is_valid(m) or boundary(m) != b:
            raise InvariantViolation(f"enumerated measure does not reproduce boundary {b}")
        out.append(m)
    out.sort(key=lambda m: tuple(m.densities.items()))
    return out


def count_measures(b: BoundaryData, bound: int | None = None, limit: int | None = None) -> int:
    stubs = stubs_from_boundary(b)
    if any(v < 0 for v in stubs.values()):
        return 0
    _, found = _search(b.r, stubs, b.omega if bound is None else bound, limit)
    return len(found)


def unique_measure(b: BoundaryData) -> TriMeasure:
    """The single measure with boundary ``b``; anything else is an invariant violation."""
    ms = enumerate_measures(b, limit=2)
    if len(ms) != 1:
        raise InvariantViolation(f"expected exactly one measure with boundary {b}, found {len(ms)}")
    return ms[0]


@lru_cache(maxsize=None)
def _lr_cached(s: SetTriple) -> int:
    if s.r == 0:
        return 1
    if not s.trace_ok():
        return 0
    return count_measures(boundary_from_sets(s, Chirality.PLUS))


def lr_coeff(s: SetTriple) -> int:
    """Littlewood-Richardson coefficient c_IJK as a count of integer measures."""
    return _lr_cached(s)


def measures_for(s: SetTriple) -> list[TriMeasure]:
    if not s.trace_ok():
        return []
    return enumerate_measures(boundary_from_sets(s, Chirality.PLUS))


@lru_cache(maxsize=None)
def _positive_subtriples(r: int, s: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    subsets = list(combinations(range(1, r + 1), s))
    out = []
    for a in subsets:
        for b in subsets:
            for c in subsets:
                if horn_positive(SetTriple(r, a, b, c)):
                    out.append((a, b, c))
    return tuple(out)


@lru_cache(maxsize=None)
def horn_positive(s: SetTriple) -> bool:
    """Decide c_IJK > 0 by the trace identity and Horn's recursive inequalities."""
    if not s.trace_ok():
        return False
    n, r = s.n, s.r
    for sub in range(1, r):
        rhs = 2 * sub * (n - sub)
        for a, b, c in _positive_subtriples(r, sub):
            lhs = 0
            for l in range(sub):
                lhs += (s.I[a[l] - 1] - (l + 1)) + (s.J[b[l] - 1] - (l + 1)) + (s.K[c[l] - 1] - (l + 1))
            if lhs < rhs:
                return False
    return True


def all_triples(n: int, r: int | None = None):
    """Every SetTriple of equal-size subsets of 1..n (optionally of size r)."""
    sizes = range(0, n + 1) if r is None else [r]
    for k in sizes:
        subsets = list(combinations(range(1, n + 1), k))
        for a in subsets:
            for b in subsets:
                for c in subsets:
                    yield SetTriple(n, a, b, c)


# --- honeycombs -------------------------------------------------------------

@dataclass(frozen=True)
class Honeycomb:
    r: int
    values: dict[Edge, Fraction]

    def __getitem__(self, e: Edge) -> Fraction:
        return self.values[e]


# For each rhombus family: (AB direction, AC direction, offset of D relative to A)
# with B = A + AB, C = A + AC and h(AB) - h(CD) = m(AC).
_RHOMBI = (
    (0, 5, 4),  # B = A+u, C = A-v, D = A+w
    (2, 1, 0),  # B = A+v, C = A-w, D = A+u
    (4, 3, 2),  # B = A+w, C = A-u, D = A+v
)


def _rhombi(r: int):
    """Yield (A, B, C, D, family) for every rhombus contained in the triangle."""
    for p in triangle_points(r):
        for fam, (ab, ac, ad) in enumerate(_RHOMBI):
            b, c, d = p.step(ab), p.step(ac), p.step(ad)
            if all(in_triangle(q, r) for q in (b, c, d)):
                yield p, b, c, d, fam


def honeycomb_from_measure(m: TriMeasure) -> Honeycomb:
    """Honeycomb whose side values are alpha - 2w/3 etc. and whose rhombus
    differences are the measure's diagonal densities.

    Each edge direction is filled from its own side of the triangle by the
    rhombus family that translates it inward.
    """
    if m.chirality is not Chirality.PLUS:
        raise ValueError("honeycombs are built from PLUS measures")
    b = boundary(m)
    r, third = m.r, Fraction(2 * b.omega, 3)
    h: dict[Edge, Fraction] = {}
    for l in range(1, r + 1):
        h[edge(Point(l - 1, 0), 0)] = b.alpha[l - 1] - third
        h[edge(Point(r, l - 1), 2)] = b.beta[l - 1] - third
        h[edge(Point(r - l + 1, r - l + 1), 4)] = b.gamma[l - 1] - third
    # u-edges, row by row upward: h(A,A+u) = h(A+w, A+w+u) + m(A, A-v)
    for y in range(1, r + 1):
        for x in range(y, r):
            a = Point(x, y)
            h[edge(a, 0)] = h[edge(a.step(4), 0)] + m.at(a, 5)
    # v-edges, column by column leftward: h(A,A+v) = h(A+u, A+u+v) + m(A, A+u+v)
    for x in range(r - 1, -1, -1):
        for y in range(0, x):
            a = Point(x, y)
            h[edge(a, 2)] = h[edge(a.step(0), 2)] + m.at(a, 1)
    # w-edges, from the C side downward: h(A,A+w) = h(A+v, A+v+w) + m(A, A-u)
    for diff in range(1, r + 1):  # diff = x - y
        for y in range(r - diff, -1, -1):
            a = Point(y + diff, y)
            if not in_triangle(a.step(4), r):
                continue
            h[edge(a, 4)] = h[edge(a.step(2), 4)] + m.at(a, 3)
    missing = set(inner_edges(r)) - set(h)
    if missing:
        raise InvariantViolation(f"honeycomb propagation left {len(missing)} edges unset")
    return Honeycomb(r, h)


def honeycomb_defects(h: Honeycomb, m: TriMeasure) -> list[str]:
    """Every failure of the side values, rhombus/density identity, triangle sums
    and rhombus inequalities; empty when h is a honeycomb attached to m."""
    r = h.r
    b = boundary(m)
    third = Fraction(2 * b.omega, 3)
    out = []
    for l in range(1, r + 1):
        for label, e, target in (
            ("A", edge(Point(l - 1, 0), 0), b.alpha[l - 1]),
            ("B", edge(Point(r, l - 1), 2), b.beta[l - 1]),
            ("C", edge(Point(r - l + 1, r - l + 1), 4), b.gamma[l - 1]),
        ):
            if h[e] != target - third:
                out.append(f"side {label} value at l={l}")
    for p in triangle_points(r):
        for tri in ((p, p.step(0), p.step(1)), (p, p.step(1), p.step(2))):
            if all(in_triangle(q, r) for q in tri):
                a, bb, c = tri
                s = h[_e(a, bb)] + h[_e(a, c)] + h[_e(bb, c)]
                if s != 0:
                    out.append(f"triangle {tri} sums to {s}")
    for a, bb, c, d, _ in _rhombi(r):
        lhs = h[_e(a, bb)] - h[_e(c, d)]
        if lhs != m[_e(a, c)]:
            out.append(f"rhombus {a},{bb},{c},{d}: difference {lhs} != density {m[_e(a, c)]}")
        # with the triangle sums this pairs h(AB) - h(CD) with h(AD) - h(BC)
        if lhs != h[_e(a, d)] - h[_e(bb, c)] or lhs < 0:
            out.append(f"rhombus {a},{bb},{c},{d}: inequality fails")
    return out


def _e(p: Point, q: Point) -> Edge:
    from .trilattice import direction

    return edge(p, direction(p, q))
