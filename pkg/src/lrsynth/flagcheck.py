"""Evaluation of lattice polynomials on random flags over a prime field and
the Schubert position check for the resulting subspace.  The second half is
floating point: a Jacobi eigensolver and the eigenvalue inequality check for
A + B + C = 0."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .measure import SetTriple
from .synth import FLAGS, LatticePoly

DEFAULT_PRIME = 1_000_003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class PrimeField:
    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if p >= 2**31:
            raise ValueError("prime must be below 2^31 so products fit in int64")
        self.p = p

    def inv(self, a: int) -> int:
        return pow(int(a), self.p - 2, self.p)

    def rref(self, mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form mod p, zero rows dropped, and pivot columns."""
        p = self.p
        a = np.array(mat, dtype=np.int64) % p
        if a.ndim != 2:
            raise ValueError("expected a matrix")
        rows, cols = a.shape
        pivots = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                a[[r, k]] = a[[k, r]]
            a[r] = (a[r] * self.inv(a[r, c])) % p
            col = a[:, c].copy()
            col[r] = 0
            mask = col != 0
            if mask.any():
                a[mask] = (a[mask] - np.outer(col[mask], a[r])) % p
            pivots.append(c)
            r += 1
        return a[:r], pivots

    def nullspace(self, mat: np.ndarray) -> np.ndarray:
        """Basis (as rows) of {x : mat @ x = 0}."""
        mat = np.asarray(mat, dtype=np.int64)
        cols = mat.shape[1]
        red, piv = self.rref(mat)
        free = [c for c in range(cols) if c not in piv]
        basis = np.zeros((len(free), cols), dtype=np.int64)
        for i, f in enumerate(free):
            basis[i, f] = 1
            for row, pc in enumerate(piv):
                basis[i, pc] = (-red[row, f]) % self.p
        return basis


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis`` (kept in reduced echelon form) inside F_p^n."""

    field: PrimeField
    n: int
    basis: np.ndarray

    @classmethod
    def span(cls, fld: PrimeField, n: int, rows) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
        red, _ = fld.rref(rows) if len(rows) else (np.zeros((0, n), dtype=np.int64), [])
        return cls(fld, n, red)

    @classmethod
    def zero(cls, fld: PrimeField, n: int) -> "Subspace":
        return cls(fld, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def whole(cls, fld: PrimeField, n: int) -> "Subspace":
        return cls(fld, n, np.eye(n, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def join(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.field, self.n, np.vstack([self.basis, other.basis]))

    def meet(self, other: "Subspace") -> "Subspace":
        a, b = self.dim, other.dim
        if a == 0 or b == 0:
            return Subspace.zero(self.field, self.n)
        # x U = y V  <=>  (x, -y) in the left kernel of [U; V]
        stacked = np.vstack([self.basis, other.basis])
        kern = self.field.nullspace(stacked.T)
        if kern.shape[0] == 0:
            return Subspace.zero(self.field, self.n)
        vecs = (kern[:, :a] @ self.basis) % self.field.p
        return Subspace.span(self.field, self.n, vecs)

    def annihilator(self) -> "Subspace":
        if self.dim == 0:
            return Subspace.whole(self.field, self.n)
        return Subspace.span(self.field, self.n, self.field.nullspace(self.basis))

    def contains(self, other: "Subspace") -> bool:
        return self.join(other).dim == self.dim

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and np.array_equal(self.basis, other.basis)

    def __and__(self, other):
        return self.meet(other)

    def __or__(self, other):
        return self.join(other)


@dataclass(frozen=True, eq=False)
class FlagBasis:
    """X_j is spanned by the first j columns of ``matrix``."""

    field: PrimeField
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __getitem__(self, j: int) -> Subspace:
        if not 0 <= j <= self.n:
            raise IndexError(j)
        return Subspace.span(self.field, self.n, self.matrix[:, :j].T)


def random_matrix(fld: PrimeField, n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """A random k x n matrix of full rank k."""
    for _ in range(1000):
        m = rng.integers(0, fld.p, size=(k, n), dtype=np.int64)
        if fld.rref(m)[0].shape[0] == k:
            return m
    raise RuntimeError("could not draw a full-rank matrix")


def random_flags(n: int, seed: int, fld: PrimeField | None = None) -> dict[str, FlagBasis]:
    fld = fld or PrimeField()
    rng = np.random.default_rng(seed)
    return {f: FlagBasis(fld, random_matrix(fld, n, n, rng).T) for f in FLAGS}


def evaluate(poly: LatticePoly, flags: dict[str, FlagBasis]) -> Subspace:
    """Evaluate the DAG once per node."""
    fld = next(iter(flags.values())).field
    n = poly.n
    vals: list[Subspace] = []
    for node in poly.nodes:
        op = node[0]
        if op == "var":
            vals.append(flags[node[1]][node[2]])
        elif op == "top":
            vals.append(Subspace.whole(fld, n))
        elif op == "bottom":
            vals.append(Subspace.zero(fld, n))
        elif op == "meet":
            vals.append(vals[node[1]].meet(vals[node[2]]))
        else:
            vals.append(vals[node[1]].join(vals[node[2]]))
    return vals[poly.root]


def phi(s: tuple[int, ...], i: int) -> int:
    """Generic dimension of P ∧ X_i for P in the Schubert cell of s."""
    return sum(1 for v in s if v <= i)


@dataclass
class PatternReport:
    passed: bool
    dim: int
    expected_dim: int
    mismatches: list[dict] = field(default_factory=list)

    def as_json(self) -> dict:
        return {"passed": self.passed, "dim": self.dim, "expected_dim": self.expected_dim, "mismatches": self.mismatches}


def check_pattern(space: Subspace, flags: dict[str, FlagBasis], s: SetTriple) -> PatternReport:
    """dim P = r and dim(P ∧ X_i) = phi(S, i) for every flag X with set S and i = 0..n."""
    mism = []
    for f, sset in zip(FLAGS, s.sets):
        for i in range(s.n + 1):
            got = space.meet(flags[f][i]).dim
            want = phi(sset, i)
            if got != want:
                mism.append({"flag": f, "i": i, "expected": want, "observed": got})
    ok = space.dim == s.r and not mism
    return PatternReport(ok, space.dim, s.r, mism)


def schubert_member(space: Subspace, flag: FlagBasis, s: tuple[int, ...]) -> bool:
    """Membership in the Schubert variety: dim(P ∧ X_{s_l}) >= l for all l."""
    if space.dim != len(s):
        return False
    return all(space.meet(flag[v]).dim >= l for l, v in enumerate(s, 1))


def verify(poly: LatticePoly, s: SetTriple, seeds, fld: PrimeField | None = None) -> dict:
    fld = fld or PrimeField()
    runs = []
    for seed in seeds:
        flags = random_flags(s.n, seed, fld)
        rep = check_pattern(evaluate(poly, flags), flags, s)
        runs.append({"seed": seed, **rep.as_json()})
    return {"problem": s.as_json(), "prime": fld.p, "polynomial": poly.text(), "passed": all(r["passed"] for r in runs), "runs": runs}


def generic_meet_dim_trial(n: int, a: int, b: int, trials: int, seed: int, fld: PrimeField | None = None) -> float:
    """Fraction of trials where random a- and b-dimensional subspaces meet in max(0, a+b-n)."""
    fld = fld or PrimeField()
    rng = np.random.default_rng(seed)
    want = max(0, a + b - n)
    hits = 0
    for _ in range(trials):
        u = Subspace.span(fld, n, random_matrix(fld, n, a, rng)) if a else Subspace.zero(fld, n)
        v = Subspace.span(fld, n, random_matrix(fld, n, b, rng)) if b else Subspace.zero(fld, n)
        hits += u.meet(v).dim == want
    return hits / trials


# --- spectral Horn check ---------------------------------------------------

def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted
    nonincreasing.  Stops when the off-diagonal Frobenius norm is below
    ``tol`` times the matrix norm."""
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.allclose(a, a.T):
        raise ValueError("expected a symmetric square matrix")
    n = a.shape[0]
    scale = max(np.linalg.norm(a), 1.0)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            return np.sort(np.diag(a))[::-1]
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) <= 1e-20 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                elif theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = a[p].copy(), a[q].copy()
                a[p], a[q] = c * rp - s * rq, s * rp + c * rq
                cp, cq = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * cp - s * cq, s * cp + c * cq
    raise RuntimeError("Jacobi iteration did not converge")


def coarsen(lam, n: int) -> np.ndarray:
    """Block sums of a length-N spectrum over n consecutive blocks, divided by N."""
    lam = np.asarray(lam, dtype=float)
    big = lam.shape[0]
    if n < 1 or big % n:
        raise ValueError(f"{n} does not divide {big}")
    return lam.reshape(n, big // n).sum(axis=1) / big


def horn_margins(a: np.ndarray, b: np.ndarray, triples: dict[int, list[SetTriple]]) -> list[tuple[int, SetTriple, float]]:
    """For C = -A - B: (n, triple, value / scale) of every inequality, where
    value is the coarsened eigenvalue sum and scale the largest operator norm."""
    c = -a - b
    norm = max(np.linalg.norm(m, 2) for m in (a, b, c))
    norm = norm if norm > 0 else 1.0
    specs = [jacobi_eigenvalues(m) for m in (a, b, c)]
    out = []
    for n, ts in triples.items():
        la, lb, lc = (coarsen(sp, n) for sp in specs)
        for s in ts:
            val = sum(la[i - 1] for i in s.I) + sum(lb[j - 1] for j in s.J) + sum(lc[k - 1] for k in s.K)
            out.append((n, s, float(val / norm)))
    return out


def horn_numeric_check(big: int, n_list, trials: int, tol: float = 1e-8, seed: int = 0) -> dict:
    """Sample symmetric A, B with C = -A - B and test, for every c = 1 triple
    with n in n_list, that the coarsened eigenvalue sums over I, J, K are <= 0
    up to ``tol`` times the largest operator norm."""
    from .hive_enum import all_triples, lr_coeff

    for n in n_list:
        if n < 1 or big % n:
            raise ValueError(f"{n} does not divide {big}")
    rng = np.random.default_rng(seed)
    triples = {n: [s for s in all_triples(n) if s.r and lr_coeff(s) == 1] for n in n_list}
    worst = -np.inf
    violations = []
    for t in range(trials):
        x, y = rng.standard_normal((2, big, big))
        for n, s, margin in horn_margins((x + x.T) / 2, (y + y.T) / 2, triples):
            worst = max(worst, margin)
            if margin > tol:
                violations.append({"trial": t, "n": n, "triple": s.as_json(), "margin": margin})
    return {
        "N": big,
        "n_list": list(n_list),
        "trials": trials,
        "seed": seed,
        "tol": tol,
        "triples_checked": {str(n): len(v) for n, v in triples.items()},
        "max_relative_margin": float(worst),
        "violations": violations,
        "passed": not violations,
    }
