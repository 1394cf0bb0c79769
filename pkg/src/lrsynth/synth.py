"""Lattice polynomials in flag variables and their recursive synthesis for
Schubert problems with c_IJK = 1.

The recursion works on the unique measure m of the problem:

* weight zero: the whole space;
* extremal with one attachment point: E_r (or F_r, G_r);
* extremal with more attachment points: solve the dual problem and apply
  De Morgan (meet <-> join, index j -> n - j);
* otherwise split off the first extremal component mu_1, solve its stretch
  and the remainder m', and feed P_1 = p_1(E, F, G) meets into p'.

STAR measures are handled by reflecting them to PLUS measures, which swaps
the roles of the E and G flags.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .hive_enum import lr_coeff, unique_measure
from .measure import (
    BoundaryData,
    InvariantViolation,
    SetTriple,
    TriMeasure,
    attachment_count,
    boundary,
    boundary_from_sets,
    reflect,
    sets_from_boundary,
    sets_of,
    stub_masses,
    subtract,
    weight,
)
from .skeleton import Precedence, decompose, is_extremal
from .trilattice import Chirality

FLAGS = ("E", "F", "G")


class Unsupported(ValueError):
    """The problem is infeasible (c = 0) or has several solutions (c > 1)."""

    def __init__(self, message: str, coeff: int):
        super().__init__(message)
        self.coeff = coeff


# --- polynomials ----------------------------------------------------------

@dataclass(frozen=True)
class LatticePoly:
    """A meet/join expression DAG.

    Nodes are tuples: ("var", flag, index), ("meet", a, b), ("join", a, b),
    ("top",), ("bottom",); children always precede their parents.
    """

    n: int
    nodes: tuple[tuple, ...]
    root: int

    def __post_init__(self):
        for i, node in enumerate(self.nodes):
            op = node[0]
            if op == "var":
                if node[1] not in FLAGS or not 0 <= node[2] <= self.n:
                    raise ValueError(f"bad variable node {node}")
            elif op in ("meet", "join"):
                if not (0 <= node[1] < i and 0 <= node[2] < i):
                    raise ValueError(f"node {i} refers forward or out of range")
            elif op not in ("top", "bottom"):
                raise ValueError(f"unknown op {op!r}")
        if not 0 <= self.root < len(self.nodes):
            raise ValueError("root out of range")

    def as_json(self) -> dict:
        out = []
        for node in self.nodes:
            if node[0] == "var":
                out.append({"op": "var", "flag": node[1], "index": node[2]})
            elif node[0] in ("meet", "join"):
                out.append({"op": node[0], "args": [node[1], node[2]]})
            else:
                out.append({"op": node[0]})
        return {"n": self.n, "nodes": out, "root": self.root}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "LatticePoly":
        if isinstance(data, str):
            data = json.loads(data)
        nodes = []
        for d in data["nodes"]:
            if d["op"] == "var":
                nodes.append(("var", d["flag"], int(d["index"])))
            elif d["op"] in ("meet", "join"):
                a, b = d["args"]
                nodes.append((d["op"], int(a), int(b)))
            else:
                nodes.append((d["op"],))
        return cls(int(data["n"]), tuple(nodes), int(data["root"]))

    def text(self) -> str:
        memo: dict[int, str] = {}

        def show(i: int, parent: str | None) -> str:
            node = self.nodes[i]
            op = node[0]
            if op == "var":
                return f"{node[1]}{node[2]}"
            if op == "top":
                return "1"
            if op == "bottom":
                return "0"
            if i not in memo:
                sym = " ∧ " if op == "meet" else " ∨ "
                memo[i] = sym.join(show(c, op) for c in _flat_args(self, i, op))
            s = memo[i]
            return s if parent is None else f"({s})"

        return show(self.root, None)

    def __str__(self):
        return self.text()

    def size(self) -> int:
        return len(self.nodes)

    def variables(self) -> set[tuple[str, int]]:
        reach = _reachable(self)
        return {(self.nodes[i][1], self.nodes[i][2]) for i in reach if self.nodes[i][0] == "var"}


def _flat_args(p: LatticePoly, i: int, op: str) -> list[int]:
    node = p.nodes[i]
    out = []
    for c in node[1:]:
        if p.nodes[c][0] == op:
            out.extend(_flat_args(p, c, op))
        else:
            out.append(c)
    return out


def _reachable(p: LatticePoly) -> set[int]:
    seen = set()
    stack = [p.root]
    while stack:
        i = stack.pop()
        if i in seen:
            continue
        seen.add(i)
        if p.nodes[i][0] in ("meet", "join"):
            stack.extend(p.nodes[i][1:])
    return seen


class PolyBuilder:
    """Hash-consing node pool."""

    def __init__(self, n: int):
        self.n = n
        self.nodes: list[tuple] = []
        self._ids: dict[tuple, int] = {}

    def _add(self, node: tuple) -> int:
        if node not in self._ids:
            self._ids[node] = len(self.nodes)
            self.nodes.append(node)
        return self._ids[node]

    def var(self, flag: str, index: int) -> int:
        return self._add(("var", flag, index))

    def top(self) -> int:
        return self._add(("top",))

    def bottom(self) -> int:
        return self._add(("bottom",))

    def meet(self, a: int, b: int) -> int:
        return self._add(("meet",) + tuple(sorted((a, b))))

    def join(self, a: int, b: int) -> int:
        return self._add(("join",) + tuple(sorted((a, b))))

    def fold(self, op: str, ids: list[int]) -> int:
        f = self.meet if op == "meet" else self.join
        acc = ids[0]
        for i in ids[1:]:
            acc = f(acc, i)
        return acc

    def build(self, root: int) -> LatticePoly:
        return _compact(LatticePoly(self.n, tuple(self.nodes), root))

    def graft(
        self,
        p: LatticePoly,
        var: Callable[[str, int], int] | None = None,
        top: Callable[[], int] | None = None,
        bottom: Callable[[], int] | None = None,
        dual: bool = False,
    ) -> int:
        """Copy p into this pool, rewriting leaves through the callbacks.

        With ``dual`` set, meets and joins are exchanged.
        """
        var = var or self.var
        top = top or self.top
        bottom = bottom or self.bottom
        ids: dict[int, int] = {}
        for i in sorted(_reachable(p)):
            node = p.nodes[i]
            op = node[0]
            if op == "var":
                ids[i] = var(node[1], node[2])
            elif op == "top":
                ids[i] = top()
            elif op == "bottom":
                ids[i] = bottom()
            else:
                if dual:
                    op = "join" if op == "meet" else "meet"
                f = self.meet if op == "meet" else self.join
                ids[i] = f(ids[node[1]], ids[node[2]])
        return ids[p.root]


def _compact(p: LatticePoly) -> LatticePoly:
    keep = sorted(_reachable(p))
    new = {old: i for i, old in enumerate(keep)}
    nodes = []
    for old in keep:
        node = p.nodes[old]
        if node[0] in ("meet", "join"):
            node = (node[0], new[node[1]], new[node[2]])
        nodes.append(node)
    return LatticePoly(p.n, tuple(nodes), new[p.root])


def top(n: int) -> LatticePoly:
    b = PolyBuilder(n)
    return b.build(b.top())


def bottom(n: int) -> LatticePoly:
    b = PolyBuilder(n)
    return b.build(b.bottom())


def var(n: int, flag: str, index: int) -> LatticePoly:
    b = PolyBuilder(n)
    return b.build(b.var(flag, index))


def combine(op: str, *polys: LatticePoly) -> LatticePoly:
    n = polys[0].n
    b = PolyBuilder(n)
    return b.build(b.fold(op, [b.graft(p) for p in polys]))


def parse(text: str, n: int) -> LatticePoly:
    """Read the pretty form, e.g. ``(E1 ∧ F2) ∨ G1``; '&'/'|' also accepted."""
    import re

    tokens = re.findall(r"[EFG]\d+|[()∧∨&|01]", text.replace(" ", ""))
    b = PolyBuilder(n)
    pos = 0

    def atom() -> int:
        nonlocal pos
        t = tokens[pos]
        pos += 1
        if t == "(":
            v = expr()
            pos += 1
            return v
        if t == "1":
            return b.top()
        if t == "0":
            return b.bottom()
        return b.var(t[0], int(t[1:]))

    def expr() -> int:
        nonlocal pos
        acc = atom()
        while pos < len(tokens) and tokens[pos] in "∧∨&|":
            op = "meet" if tokens[pos] in "∧&" else "join"
            pos += 1
            rhs = atom()
            acc = b.meet(acc, rhs) if op == "meet" else b.join(acc, rhs)
        return acc

    root = expr()
    return b.build(root)


def de_morgan(p: LatticePoly) -> LatticePoly:
    """Exchange meet/join and top/bottom, and send X_j to X_{n-j}."""
    b = PolyBuilder(p.n)
    root = b.graft(p, var=lambda f, j: b.var(f, p.n - j), top=b.bottom, bottom=b.top, dual=True)
    return b.build(root)


def rename_flags(p: LatticePoly, mapping: Mapping[str, str]) -> LatticePoly:
    b = PolyBuilder(p.n)
    return b.build(b.graft(p, var=lambda f, j: b.var(mapping.get(f, f), j)))


def normalize(p: LatticePoly) -> LatticePoly:
    """Simplify with lattice identities that hold for flags: same-flag meets and
    joins collapse to min/max index, X_0 = 0, X_n = 1, identities, idempotence
    and absorption."""
    n = p.n
    b = PolyBuilder(n)
    ids: dict[int, int] = {}
    top_id, bot_id = b.top(), b.bottom()

    def operands(node_id: int, op: str) -> list[int]:
        node = b.nodes[node_id]
        if node[0] == op:
            return operands(node[1], op) + operands(node[2], op)
        return [node_id]

    for i in sorted(_reachable(p)):
        node = p.nodes[i]
        op = node[0]
        if op == "var":
            j = node[2]
            ids[i] = bot_id if j == 0 else top_id if j == n else b.var(node[1], j)
            continue
        if op in ("top", "bottom"):
            ids[i] = top_id if op == "top" else bot_id
            continue
        args = operands(ids[node[1]], op) + operands(ids[node[2]], op)
        absorbing, neutral = (bot_id, top_id) if op == "meet" else (top_id, bot_id)
        if absorbing in args:
            ids[i] = absorbing
            continue
        best: dict[str, int] = {}
        rest = []
        for a in args:
            if a == neutral:
                continue
            an = b.nodes[a]
            if an[0] == "var":
                f, j = an[1], an[2]
                if f not in best:
                    best[f] = j
                else:
                    best[f] = min(best[f], j) if op == "meet" else max(best[f], j)
            elif a not in rest:
                rest.append(a)
        terms = [b.var(f, j) for f, j in sorted(best.items())] + rest
        dual_op = "join" if op == "meet" else "meet"
        # absorption: x ∧ (x ∨ y) = x
        terms = [t for t in terms if not (b.nodes[t][0] == dual_op and set(operands(t, dual_op)) & (set(terms) - {t}))]
        if not terms:
            ids[i] = neutral
        else:
            ids[i] = b.fold(op, sorted(terms))
    return b.build(ids[p.root])


# --- problem-level operations ---------------------------------------------

def dual_set(n: int, s: tuple[int, ...]) -> tuple[int, ...]:
    inside = set(s)
    return tuple(sorted(n + 1 - i for i in range(1, n + 1) if i not in inside))


def dual_sets(s: SetTriple) -> SetTriple:
    return SetTriple(s.n, *(dual_set(s.n, x) for x in s.sets))


def dual_measure(m: TriMeasure) -> TriMeasure:
    """The unique measure of opposite chirality whose sets are the duals of m's."""
    d = dual_sets(sets_of(m))
    if d.r == 0:
        raise ValueError("the dual of a measure with r = n is empty")
    return unique_measure(boundary_from_sets(d, m.chirality.flipped))


@dataclass(frozen=True)
class Reduction:
    mu1: TriMeasure
    m_prime: TriMeasure
    positions: dict[str, list[int]]
    stretched: TriMeasure
    r1: int
    sets_mu1: SetTriple
    sets_m_prime: SetTriple


def _stretch_boundary(mu1: TriMeasure, m_prime: TriMeasure) -> tuple[BoundaryData, dict[str, list[int]]]:
    r = mu1.r
    a1 = stub_masses(mu1)
    ap = stub_masses(m_prime)
    r1 = r + weight(m_prime)
    om = weight(mu1)
    positions = {}
    vecs = []
    for side in "ABC":
        pos = [i + sum(ap[side][:i]) for i in range(r + 1)]
        positions[side] = pos
        stubs = [0] * (r1 + 1)
        for i, l in enumerate(pos):
            stubs[l] += a1[side][i]
        vecs.append(tuple(sum(stubs[:l]) for l in range(1, r1 + 1)))
    return BoundaryData(r1, Chirality.PLUS, om, *vecs), positions


def reduction_data(m: TriMeasure, prec: Precedence | None = None, first: int = 0) -> Reduction:
    """Split off a component (by default the first) and build its stretch to
    the puzzle of the rest."""
    if m.chirality is not Chirality.PLUS:
        raise ValueError("reduction is implemented for PLUS measures")
    prec = prec or decompose(m)
    if len(prec.components) < 2:
        raise ValueError("reduction needs at least two components")
    mu1 = prec.components[first].measure
    m_prime = subtract(m, mu1)
    b1, positions = _stretch_boundary(mu1, m_prime)
    stretched = unique_measure(b1)
    s1 = sets_from_boundary(b1)
    sp = sets_of(m_prime)
    s = sets_of(m)
    if s1.n != s.n or sp.n != b1.r:
        raise InvariantViolation("stretch has inconsistent dimensions")
    for big, sub, orig in zip(s1.sets, sp.sets, s.sets):
        for t, it in enumerate(orig):
            if big[sub[t] - 1] != it:
                raise InvariantViolation(f"anchor identity fails for {s}")
    return Reduction(mu1, m_prime, positions, stretched, b1.r, s1, sp)


def stretched_sets_closed_form(red: Reduction) -> list[tuple[int, ...]]:
    """Union formula for the sets of the stretch (valid when the last a'_r is 0)."""
    r = red.mu1.r
    a1 = stub_masses(red.mu1)
    ap = stub_masses(red.m_prime)
    out = []
    for side in "ABC":
        vals = []
        for j in range(1, r + 1):
            off = sum(a1[side][:j]) + sum(ap[side][l] + 1 for l in range(j - 1))
            vals.extend(s + off for s in range(1, ap[side][j - 1] + 2))
        out.append(tuple(vals))
    return out


@dataclass
class SynthStats:
    max_depth: int = 0
    calls: int = 0
    dual_steps: int = 0
    reductions: int = 0
    trace: list[str] = field(default_factory=list)


class Synthesizer:
    """Memoized recursive synthesis; one instance can serve many problems."""

    def __init__(self, trace: bool = False):
        self._memo: dict[SetTriple, LatticePoly] = {}
        self.stats = SynthStats()
        self._trace = trace

    def __call__(self, s: SetTriple) -> LatticePoly:
        c = lr_coeff(s)
        if c != 1:
            raise Unsupported(f"synthesis needs c_IJK = 1, got c = {c} for {s}", c)
        if s.r == 0:
            return bottom(s.n)
        m = unique_measure(boundary_from_sets(s, Chirality.PLUS))
        return normalize(self._solve(m, 1))

    def _log(self, depth: int, msg: str):
        if self._trace:
            self.stats.trace.append("  " * (depth - 1) + msg)

    def _solve(self, m: TriMeasure, depth: int) -> LatticePoly:
        self.stats.calls += 1
        self.stats.max_depth = max(self.stats.max_depth, depth)
        if m.chirality is Chirality.STAR:
            self._log(depth, "reflect STAR -> PLUS (E <-> G)")
            q = self._solve(reflect(m), depth)
            return rename_flags(q, {"E": "G", "G": "E"})
        s = sets_of(m)
        if s in self._memo:
            return self._memo[s]
        n, r = s.n, s.r
        omega = n - r
        if omega == 0:
            self._log(depth, f"{s}: weight 0 -> 1")
            out = top(n)
        else:
            prec = decompose(m)
            if len(prec.components) == 1:
                gamma = attachment_count(m)
                if gamma == 1:
                    full = tuple(range(1, r + 1))
                    sides = [f for f, x in zip(FLAGS, s.sets) if x == full]
                    if len(sides) != 1:
                        raise InvariantViolation(f"base case {s} does not have exactly one set 1..r")
                    self._log(depth, f"{s}: base case -> {sides[0]}{r}")
                    out = var(n, sides[0], r)
                else:
                    self.stats.dual_steps += 1
                    md = dual_measure(m)
                    if is_extremal(md):
                        raise InvariantViolation(f"both {s} and its dual are extremal with {gamma} attachment points")
                    self._log(depth, f"{s}: extremal, {gamma} attachment points -> dual {sets_of(md)}")
                    out = de_morgan(self._solve(md, depth + 1))
            else:
                self.stats.reductions += 1
                red = reduction_data(m, prec)
                self._log(depth, f"{s}: reduce -> stretch {red.sets_mu1}, rest {red.sets_m_prime}")
                p1 = self._solve(red.stretched, depth + 1)
                pp = self._solve(red.m_prime, depth + 1)
                out = substitute_restricted(pp, p1, red.sets_mu1)
        self._memo[s] = out
        return out


def substitute_restricted(pp: LatticePoly, p1: LatticePoly, sets1: SetTriple) -> LatticePoly:
    """Evaluate pp on the flags P1 ∧ X_{i1(l)} inside P1 = p1.

    The top of pp becomes p1 itself; X_l becomes p1 ∧ X_{i1(l)}.
    """
    b = PolyBuilder(p1.n)
    head = b.graft(p1)
    lookup = dict(zip(FLAGS, sets1.sets))

    def leaf(f: str, l: int) -> int:
        if l == 0:
            return b.bottom()
        return b.meet(head, b.var(f, lookup[f][l - 1]))

    return b.build(b.graft(pp, var=leaf, top=lambda: head))


def synthesize(s: SetTriple) -> LatticePoly:
    return Synthesizer()(s)
