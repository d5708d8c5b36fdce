"""Exact linear algebra over the rationals and the integers.

The matrices that arise here (automorphism actions, fixed-locus systems,
sublattice normal forms) have integer entries and desk-scale sizes, so a
small Fraction-based toolkit keeps every group-theoretic check decidable
without pulling in a computer algebra system. Floats only ever appear at
the boundary, converted exactly via Fraction(float).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

FracVec = list  # list[Fraction]
FracMat = list  # list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def fracvec(values: Iterable) -> FracVec:
    return [Fraction(v) for v in values]


def fracmat(rows: Iterable[Iterable]) -> FracMat:
    return [[Fraction(v) for v in row] for row in rows]


def identity_matrix(n: int) -> FracMat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_vec(a: FracMat, x: Sequence) -> FracVec:
    return [sum((row[j] * x[j] for j in range(len(x))), ZERO) for row in a]


def mat_mul(a: FracMat, b: FracMat) -> FracMat:
    cols = len(b[0])
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(cols)]
        for i in range(len(a))
    ]


def transpose(a: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*a)]


def vec_add(x: Sequence, y: Sequence) -> FracVec:
    return [a + b for a, b in zip(x, y)]


def vec_sub(x: Sequence, y: Sequence) -> FracVec:
    return [a - b for a, b in zip(x, y)]


def vec_scale(c, x: Sequence) -> FracVec:
    return [c * a for a in x]


def rref(rows: Iterable[Sequence], ncols: Optional[int] = None):
    """Reduced row echelon form.

    Returns (reduced_nonzero_rows, pivot_columns). The input is copied.
    """
    a = [list(map(Fraction, r)) for r in rows]
    if not a:
        return [], []
    if ncols is None:
        ncols = len(a[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c]
        a[r] = [x / inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Iterable[Sequence], ncols: Optional[int] = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Iterable[Sequence], ncols: int) -> list:
    """Basis vectors of the kernel of the matrix with the given rows."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve_affine(rows: Iterable[Sequence], rhs: Sequence, ncols: int):
    """Solve A x = b exactly.

    Returns (particular_solution, kernel_basis) or None when inconsistent.
    The particular solution sets all free variables to zero.
    """
    aug = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    particular = [ZERO] * ncols
    for r, pc in enumerate(pivots):
        particular[pc] = red[r][ncols]
    kernel = nullspace([row[:ncols] for row in red], ncols)
    return particular, kernel


def in_span(basis: Sequence[Sequence], v: Sequence) -> bool:
    """Whether v lies in the span of the given basis vectors."""
    if not basis:
        return all(x == 0 for x in v)
    cols = [list(b) for b in basis]
    n = len(v)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    return solve_affine(rows, v, len(cols)) is not None


def det(mat: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination."""
    a = [list(map(Fraction, row)) for row in mat]
    n = len(a)
    sign = 1
    result = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pr is None:
            return ZERO
        if pr != c:
            a[c], a[pr] = a[pr], a[c]
            sign = -sign
        result *= a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def invert(mat: Sequence[Sequence]) -> Optional[FracMat]:
    """Exact inverse of a square matrix, or None when singular."""
    n = len(mat)
    aug = [list(map(Fraction, row)) + identity_matrix(n)[i] for i, row in enumerate(mat)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in red]


class LinearSystem:
    """Incrementally built exact linear system kept in reduced form.

    Adding an equation either extends the reduced row set, turns out to be
    redundant, or contradicts it (add() returns False). Used as the pruning
    engine of the automorphism search, hence the cheap copy().
    """

    __slots__ = ("nvars", "rows", "rhs", "pivots")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.rows: list = []
        self.rhs: list = []
        self.pivots: list = []

    def copy(self) -> "LinearSystem":
        other = object.__new__(LinearSystem)
        other.nvars = self.nvars
        other.rows = [row[:] for row in self.rows]
        other.rhs = self.rhs[:]
        other.pivots = self.pivots[:]
        return other

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, coeffs: Sequence, rhs) -> bool:
        """Reduce one equation against the system; False iff inconsistent."""
        c = [Fraction(x) for x in coeffs]
        r = Fraction(rhs)
        for row, rr, p in zip(self.rows, self.rhs, self.pivots):
            f = c[p]
            if f:
                c = [a - f * b for a, b in zip(c, row)]
                r -= f * rr
        pivot = next((j for j in range(self.nvars) if c[j] != 0), None)
        if pivot is None:
            return r == 0
        inv = c[pivot]
        c = [a / inv for a in c]
        r /= inv
        for i in range(len(self.rows)):
            f = self.rows[i][pivot]
            if f:
                self.rows[i] = [a - f * b for a, b in zip(self.rows[i], c)]
                self.rhs[i] -= f * r
        self.rows.append(c)
        self.rhs.append(r)
        self.pivots.append(pivot)
        return True

    def solution_if_unique(self) -> Optional[FracVec]:
        """The unique solution when the system is fully determined, else None."""
        if len(self.rows) < self.nvars:
            return None
        sol = [ZERO] * self.nvars
        for rr, p in zip(self.rhs, self.pivots):
            sol[p] = rr
        return sol


# ---------------------------------------------------------------------------
# Integer lattice routines (plain Python ints, no overflow concerns)
# ---------------------------------------------------------------------------


def integer_det(mat: Sequence[Sequence[int]]) -> int:
    d = det(mat)
    assert d.denominator == 1
    return int(d)


def is_unimodular(mat: Sequence[Sequence[int]]) -> bool:
    if any(int(x) != x for row in mat for x in row):
        return False
    return abs(integer_det(mat)) == 1


def hnf_upper(mat: Sequence[Sequence[int]]):
    """Column-style Hermite normal form of a nonsingular integer matrix.

    Returns (H, U) with H = M @ U, U unimodular, H upper triangular with
    positive diagonal and 0 <= H[r][c] < H[r][r] for c > r. The columns of
    H generate the same lattice as the columns of M.
    """
    d = len(mat)
    h = [[int(x) for x in row] for row in mat]
    if any(len(row) != d for row in h):
        raise ValueError("square matrix required")
    u = [[1 if i == j else 0 for j in range(d)] for i in range(d)]

    def colop_sub(dst: int, src: int, q: int) -> None:
        for r in range(d):
            h[r][dst] -= q * h[r][src]
            u[r][dst] -= q * u[r][src]

    def colswap(i: int, j: int) -> None:
        for r in range(d):
            h[r][i], h[r][j] = h[r][j], h[r][i]
            u[r][i], u[r][j] = u[r][j], u[r][i]

    for row in range(d - 1, -1, -1):
        # gcd-reduce row entries among columns 0..row into column `row`
        while True:
            nonzero = [c for c in range(row + 1) if h[row][c] != 0]
            if not nonzero:
                raise ZeroDivisionError("matrix is singular")
            cmin = min(nonzero, key=lambda c: abs(h[row][c]))
            if cmin != row:
                colswap(cmin, row)
            done = True
            for c in range(row):
                if h[row][c] != 0:
                    colop_sub(c, row, h[row][c] // h[row][row])
                    if h[row][c] != 0:
                        done = False
            if done:
                break
        if h[row][row] < 0:
            for r in range(d):
                h[r][row] = -h[r][row]
                u[r][row] = -u[r][row]
    # canonical reduction of entries right of each pivot
    for row in range(d):
        for c in range(row + 1, d):
            q = h[row][c] // h[row][row]
            if q:
                colop_sub(c, row, q)
    return h, u


def reduce_mod_hnf(h: Sequence[Sequence[int]], v: Sequence[int]):
    """Split v = rep + H q with 0 <= rep[i] < H[i][i]; returns (rep, q)."""
    d = len(h)
    rep = [int(x) for x in v]
    q = [0] * d
    for i in range(d - 1, -1, -1):
        qi = rep[i] // h[i][i]
        q[i] = qi
        if qi:
            for r in range(i + 1):
                rep[r] -= qi * h[r][i]
    return rep, q


def smith_invariant_factors(mat: Sequence[Sequence[int]]) -> list:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix."""
    a = [[int(x) for x in row] for row in mat]
    nrow = len(a)
    ncol = len(a[0]) if nrow else 0
    factors = []
    t = 0
    while t < min(nrow, ncol):
        # locate smallest-magnitude nonzero entry in the trailing block
        best = None
        for i in range(t, nrow):
            for j in range(t, ncol):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]
        # clear row and column t; restarts when a division leaves a remainder
        while True:
            clean = True
            for i in range(t + 1, nrow):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    for j in range(t, ncol):
                        a[i][j] -= q * a[t][j]
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        clean = False
            for j in range(t + 1, ncol):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    for i in range(t, nrow):
                        a[i][j] -= q * a[i][t]
                    if a[t][j] != 0:
                        for i in range(t, nrow):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        clean = False
            if clean:
                break
        # enforce the divisibility chain within the trailing block
        piv = abs(a[t][t])
        offender = None
        for i in range(t + 1, nrow):
            for j in range(t + 1, ncol):
                if a[i][j] % piv != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            for j in range(t, ncol):
                a[t][j] += a[offender][j]
            continue
        factors.append(piv)
        t += 1
    return factors
