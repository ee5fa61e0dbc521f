"""Exact linear algebra over Q(i).

Matrices are immutable tuples of tuples of Scalar.  Rank and determinant go
through fraction-free Bareiss elimination on a denominator-cleared copy;
kernels, solving and canonical subspace bases go through Gauss-Jordan RREF.
Both pipelines are exact, so they double as cross-checks on one another.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalar import Scalar, as_scalar

Vector = tuple[Scalar, ...]


class ExactMatrix:
    """Immutable dense matrix with Scalar entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = tuple(tuple(as_scalar(v) for v in row) for row in entries)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        one, zero = Scalar(1), Scalar(0)
        return ExactMatrix(
            [[one if i == j else zero for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(r: int, c: int) -> "ExactMatrix":
        zero = Scalar(0)
        return ExactMatrix([[zero] * c for _ in range(r)])

    @staticmethod
    def from_columns(cols: Sequence[Sequence]) -> "ExactMatrix":
        cols = [tuple(as_scalar(v) for v in c) for c in cols]
        if not cols:
            return ExactMatrix([])
        n = len(cols[0])
        return ExactMatrix([[c[i] for c in cols] for i in range(n)])

    @staticmethod
    def diagonal(values: Sequence) -> "ExactMatrix":
        vals = [as_scalar(v) for v in values]
        zero = Scalar(0)
        n = len(vals)
        return ExactMatrix(
            [[vals[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    # -- basic ops -----------------------------------------------------------

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._shape_check(other)
        return ExactMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._shape_check(other)
        return ExactMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ]
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in row] for row in self.entries])

    def scale(self, c) -> "ExactMatrix":
        c = as_scalar(c)
        return ExactMatrix([[c * a for a in row] for row in self.entries])

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        ot = other.transpose().entries
        return ExactMatrix(
            [
                [_dot(row, col) for col in ot]
                for row in self.entries
            ]
        )

    def matpow(self, k: int) -> "ExactMatrix":
        if self.rows != self.cols:
            raise ValueError("matpow needs a square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        out = ExactMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            [
                [self.entries[i][j] for i in range(self.rows)]
                for j in range(self.cols)
            ]
        )

    def trace(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        t = Scalar(0)
        for i in range(self.rows):
            t = t + self.entries[i][i]
        return t

    def apply(self, v: Sequence) -> Vector:
        """Matrix times column vector."""
        vec = tuple(as_scalar(x) for x in v)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(row, vec) for row in self.entries)

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(a.is_zero() for row in self.entries for a in row)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __str__(self):
        return "\n".join(
            "[" + ", ".join(str(a) for a in row) + "]" for row in self.entries
        )

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def _shape_check(self, other: "ExactMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    re = Fraction(0)
    im = Fraction(0)
    for a, b in zip(u, v):
        re += a.re * b.re - a.im * b.im
        im += a.re * b.im + a.im * b.re
    return Scalar(re, im)


# -- fraction-free elimination ------------------------------------------------


def _cleared_rows(m: ExactMatrix) -> list[list[Scalar]]:
    """Scale each row to Gaussian-integer entries (rank/det sign preserved
    up to the recorded factors; callers that need det track the factors)."""
    out = []
    for row in m.entries:
        lcm = 1
        for a in row:
            lcm = _lcm(lcm, a.re.denominator)
            lcm = _lcm(lcm, a.im.denominator)
        c = Scalar(lcm)
        out.append([c * a for a in row])
    return out


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def mat_rank(m: ExactMatrix) -> int:
    """Rank via fraction-free Bareiss elimination."""
    a = _cleared_rows(m)
    rows, cols = len(a), (len(a[0]) if a else 0)
    rank = 0
    prev = Scalar(1)
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        piv = a[r][c]
        for i in range(r + 1, rows):
            if all(a[i][j].is_zero() for j in range(c, cols)):
                continue
            for j in range(c + 1, cols):
                a[i][j] = (piv * a[i][j] - a[i][c] * a[r][j]) / prev
            a[i][c] = Scalar(0)
        prev = piv
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def mat_det(m: ExactMatrix) -> Scalar:
    """Determinant via Bareiss with row-clearing factors tracked."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    if n == 0:
        return Scalar(1)
    a = [list(row) for row in m.entries]
    sign = 1
    prev = Scalar(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            return Scalar(0)
        if pivot_row != c:
            a[c], a[pivot_row] = a[pivot_row], a[c]
            sign = -sign
        piv = a[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (piv * a[i][j] - a[i][c] * a[c][j]) / prev
            a[i][c] = Scalar(0)
        prev = piv
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def rref(m: ExactMatrix) -> tuple[ExactMatrix, tuple[int, ...]]:
    """Reduced row echelon form and pivot column indices."""
    a = [list(row) for row in m.entries]
    rows, cols = len(a), (len(a[0]) if a else 0)
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not a[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        inv = Scalar(1) / a[r][c]
        a[r] = [inv * v for v in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return ExactMatrix(a), tuple(pivots)


def mat_kernel(m: ExactMatrix) -> list[Vector]:
    """Basis of the right kernel, one vector per free column."""
    R, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Scalar(0)] * m.cols
        v[fc] = Scalar(1)
        for r_idx, pc in enumerate(pivots):
            v[pc] = -R.entries[r_idx][fc]
        basis.append(tuple(v))
    return basis


def solve(A: ExactMatrix, b: Sequence) -> Vector | None:
    """One solution of A x = b, or None if inconsistent."""
    bvec = [as_scalar(v) for v in b]
    if len(bvec) != A.rows:
        raise ValueError("rhs length mismatch")
    aug = ExactMatrix(
        [list(A.entries[i]) + [bvec[i]] for i in range(A.rows)]
    )
    R, pivots = rref(aug)
    if A.cols in pivots:
        return None
    x = [Scalar(0)] * A.cols
    for r_idx, pc in enumerate(pivots):
        x[pc] = R.entries[r_idx][A.cols]
    return tuple(x)


def char_poly(m: ExactMatrix) -> list[Scalar]:
    """Coefficients [c_0, ..., c_n] of det(tI - m), low degree first,
    via the Faddeev-LeVerrier recurrence."""
    if m.rows != m.cols:
        raise ValueError("char_poly needs a square matrix")
    n = m.rows
    coeffs = [Scalar(0)] * (n + 1)
    coeffs[n] = Scalar(1)
    M = ExactMatrix.identity(n)
    for k in range(1, n + 1):
        AM = m * M
        c = -(AM.trace() / Scalar(k))
        coeffs[n - k] = c
        M = AM + ExactMatrix.identity(n).scale(c)
    return coeffs


def min_poly(m: ExactMatrix) -> list[Scalar]:
    """Monic minimal polynomial coefficients, low degree first.

    Finds the first power m^d that is a combination of lower powers,
    working on vectorised matrices.
    """
    if m.rows != m.cols:
        raise ValueError("min_poly needs a square matrix")
    n = m.rows
    powers = [ExactMatrix.identity(n)]
    vecs = [_vec(powers[0])]
    while True:
        nxt = powers[-1] * m
        target = _vec(nxt)
        A = ExactMatrix.from_columns(vecs)
        x = solve(A, target)
        if x is not None:
            d = len(vecs)
            coeffs = [-c for c in x] + [Scalar(1)]
            return coeffs
        powers.append(nxt)
        vecs.append(target)
        if len(vecs) > n * n + 1:
            raise RuntimeError("min_poly failed to terminate")


def _vec(m: ExactMatrix) -> Vector:
    return tuple(v for row in m.entries for v in row)


# -- canonical subspaces -------------------------------------------------------


def canonical_basis(vectors: Iterable[Sequence]) -> tuple[Vector, ...]:
    """Canonical (RREF, zero rows dropped) basis of the span of the input
    vectors.  Equal spans give identical outputs, so this doubles as a key."""
    vecs = [tuple(as_scalar(v) for v in vec) for vec in vectors]
    vecs = [v for v in vecs if any(not a.is_zero() for a in v)]
    if not vecs:
        return ()
    R, pivots = rref(ExactMatrix(vecs))
    return tuple(R.entries[i] for i in range(len(pivots)))


def span_dim(vectors: Iterable[Sequence]) -> int:
    return len(canonical_basis(vectors))


def span_contains(basis: Sequence[Sequence], v: Sequence) -> bool:
    """Is v in the span of the given vectors?"""
    base = [tuple(as_scalar(x) for x in b) for b in basis]
    vec = tuple(as_scalar(x) for x in v)
    if all(a.is_zero() for a in vec):
        return True
    if not base:
        return False
    r0 = mat_rank(ExactMatrix(base))
    r1 = mat_rank(ExactMatrix(base + [vec]))
    return r0 == r1


def span_le(A: Sequence[Sequence], B: Sequence[Sequence]) -> bool:
    """Is span(A) contained in span(B)?"""
    a = [tuple(as_scalar(x) for x in v) for v in A]
    b = [tuple(as_scalar(x) for x in v) for v in B]
    a = [v for v in a if any(x for x in v)]
    if not a:
        return True
    if not b:
        return False
    rb = mat_rank(ExactMatrix(b))
    rab = mat_rank(ExactMatrix(b + a))
    return rb == rab


def span_equal(A: Sequence[Sequence], B: Sequence[Sequence]) -> bool:
    return canonical_basis(A) == canonical_basis(B)


def span_intersection(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple[Vector, ...]:
    """Canonical basis of span(A) intersect span(B)."""
    a = [tuple(as_scalar(x) for x in v) for v in A if any(as_scalar(x) for x in v)]
    b = [tuple(as_scalar(x) for x in v) for v in B if any(as_scalar(x) for x in v)]
    if not a or not b:
        return ()
    n = len(a[0])
    # Columns of M are the A vectors then the negated B vectors; kernel
    # elements (u, w) satisfy sum u_k a_k = sum w_k b_k.
    cols = [list(v) for v in a] + [[-x for x in v] for v in b]
    M = ExactMatrix.from_columns(cols)
    inter = []
    for k in mat_kernel(M):
        vec = [Scalar(0)] * n
        for idx in range(len(a)):
            if not k[idx].is_zero():
                for t in range(n):
                    vec[t] = vec[t] + k[idx] * a[idx][t]
        inter.append(tuple(vec))
    return canonical_basis(inter)
