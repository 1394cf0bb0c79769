"""Littlewood-Richardson coefficients from LR tableaux, independent of the
measure enumerator.  Used only as a test oracle."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def lr_tableaux(outer: tuple, inner: tuple, content: tuple) -> int:
    """Number of LR tableaux of shape outer/inner and the given content."""
    outer = tuple(v for v in outer if v)
    inner = tuple(v for v in inner if v)
    inner = inner + (0,) * max(0, len(outer) - len(inner))
    if len(inner) > len(outer) or any(i > o for i, o in zip(inner, outer)):
        return 0
    if sum(outer) - sum(inner) != sum(content):
        return 0
    rows = [(inner[i], outer[i]) for i in range(len(outer))]
    k = len(content)
    grid: dict[tuple[int, int], int] = {}
    counts = [0] * (k + 1)
    cells = [(i, j) for i, (a, b) in enumerate(rows) for j in range(b - 1, a - 1, -1)]

    def go(idx: int) -> int:
        if idx == len(cells):
            return int(all(counts[v + 1] == content[v] for v in range(k)))
        i, j = cells[idx]
        lo = 1
        if i > 0 and (i - 1, j) in grid:
            lo = grid[(i - 1, j)] + 1
        hi = k
        if (i, j + 1) in grid:
            hi = min(hi, grid[(i, j + 1)])
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            grid[(i, j)] = v
            total += go(idx + 1)
            del grid[(i, j)]
            counts[v] -= 1
        return total

    return go(0)


def codim_partition(n: int, s: tuple[int, ...]) -> tuple[int, ...]:
    r = len(s)
    return tuple(n - r + l - v for l, v in enumerate(s, 1))


def triple_intersection(n: int, i, j, k) -> int:
    """Intersection number of three Schubert classes of Gr(r, n) via LR tableaux."""
    r = len(i)
    a, b, c = (codim_partition(n, s) for s in (i, j, k))
    if sum(a) + sum(b) + sum(c) != r * (n - r):
        return 0
    dual_c = tuple(n - r - c[r - 1 - t] for t in range(r))
    return lr_tableaux(dual_c, a, tuple(v for v in b if v) or ())
