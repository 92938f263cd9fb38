"""Exact integer and rational linear algebra on small dense matrices.

Everything here works with arbitrary-precision Python ints and
fractions.Fraction; no floating point is used anywhere.  Matrices are
immutable and all operations are pure functions, so values can be shared
freely between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionError, NotUnimodularError

# A rational vector is a plain tuple of Fractions; Fraction normalizes
# itself, so reduced representation is automatic.
RatVector = tuple[Fraction, ...]


def rat_vector(values) -> RatVector:
    """Coerce an iterable of numbers into a tuple of Fractions."""
    return tuple(Fraction(v) for v in values)


def vector_gcd(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, abs(v))
    return g


def is_primitive(vec) -> bool:
    """True for a nonzero integer vector whose entries have gcd 1."""
    return vector_gcd(vec) == 1


def primitive_part(vec) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = vector_gcd(vec)
    if g == 0:
        raise ValueError("zero vector has no primitive part")
    return tuple(v // g for v in vec)


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix stored row-major as nested tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows:
            raise DimensionError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise DimensionError("ragged rows")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(entries[0]) if entries else 0
        return cls(len(entries), ncols, entries)

    @classmethod
    def from_columns(cls, cols, rows: int | None = None) -> "IntMatrix":
        cols = [tuple(int(x) for x in c) for c in cols]
        if rows is None:
            if not cols:
                raise DimensionError("cannot infer row count of empty matrix")
            rows = len(cols[0])
        entries = tuple(tuple(c[i] for c in cols) for i in range(rows))
        return cls(rows, len(cols), entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(self.col(j) for j in range(self.cols)))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise DimensionError("hstack needs equal row counts")
        entries = tuple(self.entries[i] + other.entries[i] for i in range(self.rows))
        return IntMatrix(self.rows, self.cols + other.cols, entries)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError("inner dimensions do not match")
        out = []
        for i in range(self.rows):
            ri = self.entries[i]
            out.append(tuple(
                sum(ri[k] * other.entries[k][j] for k in range(self.cols))
                for j in range(other.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def mul_vector(self, vec) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(r[k] * vec[k] for k in range(self.cols)) for r in self.entries)


def det_exact(m: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    if not m.is_square:
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Bareiss: the division is exact
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _snf_diagonalize(mat: IntMatrix, track_cols: bool):
    """Bring a copy of ``mat`` to Smith form; optionally track column ops.

    Returns (diagonal entries incl. zeros, V) where V is the unimodular
    column-operation matrix with mat . V congruent to the Smith form up to
    untracked row operations.  Row operations never change the kernel, so V
    is all that kernel extraction needs.
    """
    rows, cols = mat.rows, mat.cols
    d = [list(row) for row in mat.entries]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)] if track_cols else None

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        if v is not None:
            for r in v:
                r[i], r[j] = r[j], r[i]

    def add_col(dst, src, q):
        # column dst += q * column src
        for r in d:
            r[dst] += q * r[src]
        if v is not None:
            for r in v:
                r[dst] += q * r[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate the nonzero entry of smallest magnitude as pivot
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                e = d[i][j]
                if e != 0 and (best is None or abs(e) < best):
                    best = abs(e)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        while True:
            restart = False
            # clear the pivot column with row operations
            for i in range(t + 1, rows):
                if d[i][t] == 0:
                    continue
                q = d[i][t] // d[t][t]
                d[i] = [d[i][j] - q * d[t][j] for j in range(cols)]
                if d[i][t] != 0:
                    swap_rows(t, i)
                    restart = True
                    break
            if restart:
                continue
            # clear the pivot row with column operations
            for j in range(t + 1, cols):
                if d[t][j] == 0:
                    continue
                q = d[t][j] // d[t][t]
                add_col(j, t, -q)
                if d[t][j] != 0:
                    swap_cols(t, j)
                    restart = True
                    break
            if restart:
                continue
            # force the pivot to divide the remaining block
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if d[i][j] % d[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            d[t] = [d[t][j] + d[offender][j] for j in range(cols)]

        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
        t += 1

    diag = [d[i][i] for i in range(limit)]
    vmat = IntMatrix.from_rows(v) if track_cols else None
    return diag, vmat


def smith_normal_form(m: IntMatrix) -> tuple[tuple[int, ...], int]:
    """Nonzero elementary divisors d1 | d2 | ... and the rank of ``m``."""
    diag, _ = _snf_diagonalize(m, track_cols=False)
    divisors = tuple(x for x in diag if x != 0)
    return divisors, len(divisors)


def _row_hnf(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form (positive pivots, reduced above) in place."""
    if not rows:
        return rows
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0 and (pivot is None or abs(rows[i][c]) < abs(rows[pivot][c])):
                pivot = i
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        for i in range(r + 1, len(rows)):
            while rows[i][c] != 0:
                q = rows[r][c] // rows[i][c]
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[i])]
                rows[r], rows[i] = rows[i], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return [row for row in rows[:r]]


def kernel_lattice_basis(m: IntMatrix) -> IntMatrix:
    """Basis of the saturated integer kernel lattice, as matrix columns.

    The result has cols(m) - rank(m) columns, each annihilated by ``m``.
    Columns are Hermite-reduced so the output is deterministic.
    """
    diag, v = _snf_diagonalize(m, track_cols=True)
    rank = sum(1 for x in diag if x != 0)
    kernel_cols = [v.col(j) for j in range(rank, m.cols)]
    if not kernel_cols:
        return IntMatrix(m.cols, 0, tuple(() for _ in range(m.cols)))
    reduced = _row_hnf([list(c) for c in kernel_cols])
    return IntMatrix.from_columns([tuple(r) for r in reduced], rows=m.cols)


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a matrix with determinant +-1."""
    d = det_exact(m)  # raises DimensionError on non-square input
    if d not in (1, -1):
        raise NotUnimodularError(f"determinant is {d}, expected +-1")
    n = m.rows
    aug = [[Fraction(m.entries[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    entries = tuple(tuple(int(aug[i][n + j]) for j in range(n)) for i in range(n))
    return IntMatrix(n, n, entries)


# ---------------------------------------------------------------------------
# rational helpers shared by the geometry modules


def solve_rational(a_rows, b) -> RatVector | None:
    """Solve the square rational system A x = b; None if A is singular."""
    n = len(a_rows)
    aug = [[Fraction(x) for x in row] + [Fraction(rhs)] for row, rhs in zip(a_rows, b)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if pivot is None:
            return None
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return tuple(aug[i][n] for i in range(n))


def rational_rank(rows) -> int:
    """Rank of a matrix given as an iterable of rational rows."""
    work = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(work[0]) if work else 0
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][c] != 0), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = 1 / work[rank][c]
        work[rank] = [x * inv for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][c] != 0:
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[rank])]
        rank += 1
    return rank


def det_sign_columns(columns) -> int:
    """Sign of the determinant of a square matrix of rational columns.

    Each column is scaled by a positive rational to clear denominators,
    which cannot change the sign.
    """
    scaled = []
    for col in columns:
        col = [Fraction(x) for x in col]
        mult = 1
        for x in col:
            mult = mult * x.denominator // gcd(mult, x.denominator)
        scaled.append(tuple(int(x * mult) for x in col))
    d = det_exact(IntMatrix.from_columns(scaled))
    return (d > 0) - (d < 0)
