"""The Lie algebra sl_n over Q(i) and its element-level operations.

Coordinates on sl_n are fixed once and for all: the off-diagonal matrix
entries x_ij in row-major order (skipping the diagonal), followed by the
Cartan coordinates h_1, ..., h_{n-1}, where h_k is the coefficient of
diag(0, ..., 1, -1, ..., 0) with the 1 in slot k.  Equivalently, h_k equals
the partial sum of the first k diagonal entries of the matrix.  Every
polynomial in the package is written in these variables, in this order.

The invariant form used everywhere is the trace form <x, y> = tr(xy); it is
proportional to the Killing form (factor 2n), which is kept available as an
independent oracle.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import ceil, log2
from typing import Sequence

from .errors import AlgebraMismatchError, PreconditionError
from .linalg import ExactMatrix, canonical_basis, mat_kernel, char_poly, min_poly
from .mpoly import MPoly
from .scalar import Scalar, as_scalar, scalar_from_str
from . import unipoly as up


class LieAlgebraA:
    """sl_n with the fixed coordinate chart described in the module docstring."""

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need n >= 2")
        self.n = n
        self.rank = n - 1
        self.dim = n * n - 1
        # b = (dim + rank) / 2 = number of shifted generators
        self.b = (self.dim + self.rank) // 2
        off = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if i != j
        ]
        self.offdiag_positions: tuple[tuple[int, int], ...] = tuple(off)
        names = [f"x{i + 1}{j + 1}" for (i, j) in off]
        names += [f"h{k + 1}" for k in range(n - 1)]
        self.coord_names: tuple[str, ...] = tuple(names)

    # -- coordinates ------------------------------------------------------------

    def coords_of_matrix(self, m: ExactMatrix) -> tuple[Scalar, ...]:
        coords = [m.entries[i][j] for (i, j) in self.offdiag_positions]
        partial = Scalar(0)
        for k in range(self.n - 1):
            partial = partial + m.entries[k][k]
            coords.append(partial)
        return tuple(coords)

    def matrix_of_coords(self, coords: Sequence) -> ExactMatrix:
        cs = [as_scalar(c) for c in coords]
        if len(cs) != self.dim:
            raise ValueError("coordinate length mismatch")
        n = self.n
        rows = [[Scalar(0)] * n for _ in range(n)]
        for idx, (i, j) in enumerate(self.offdiag_positions):
            rows[i][j] = cs[idx]
        h = cs[len(self.offdiag_positions):]
        prev = Scalar(0)
        for k in range(n):
            cur = h[k] if k < n - 1 else Scalar(0)
            rows[k][k] = cur - prev
            prev = cur
        return ExactMatrix(rows)

    def element(self, entries) -> "GElement":
        m = entries if isinstance(entries, ExactMatrix) else ExactMatrix(entries)
        if m.rows != self.n or m.cols != self.n:
            raise PreconditionError(f"expected a {self.n}x{self.n} matrix")
        if not m.trace().is_zero():
            raise PreconditionError("matrix is not trace-free")
        return GElement(self, m)

    def element_from_coords(self, coords: Sequence) -> "GElement":
        return GElement(self, self.matrix_of_coords(coords))

    def zero(self) -> "GElement":
        return GElement(self, ExactMatrix.zeros(self.n, self.n))

    def basis(self) -> list["GElement"]:
        """Coordinate basis: E_ij for the off-diagonal chart, then the
        Cartan elements H_k = diag(..., 1, -1, ...)."""
        out = []
        for idx in range(self.dim):
            coords = [Scalar(0)] * self.dim
            coords[idx] = Scalar(1)
            out.append(self.element_from_coords(coords))
        return out

    def generic_matrix(self, vars: Sequence[str] | None = None) -> list[list[MPoly]]:
        """The n x n matrix whose entries are the coordinate functions,
        as polynomials over `vars` (default: exactly the coordinates)."""
        vt = tuple(vars) if vars is not None else self.coord_names
        n = self.n
        zero = MPoly.zero(vt)
        rows = [[zero] * n for _ in range(n)]
        for idx, (i, j) in enumerate(self.offdiag_positions):
            rows[i][j] = MPoly.var(vt, self.coord_names[idx])
        hs = [MPoly.var(vt, f"h{k + 1}") for k in range(n - 1)]
        prev = zero
        for k in range(n):
            cur = hs[k] if k < n - 1 else zero
            rows[k][k] = cur - prev
            prev = cur
        return rows

    def __repr__(self):
        return f"sl({self.n})"

    def __eq__(self, other):
        return isinstance(other, LieAlgebraA) and other.n == self.n

    def __hash__(self):
        return hash(("sl", self.n))


_CACHE: dict[int, LieAlgebraA] = {}


def sl(n: int) -> LieAlgebraA:
    if n not in _CACHE:
        _CACHE[n] = LieAlgebraA(n)
    return _CACHE[n]


class GElement:
    """A trace-free n x n matrix tied to its algebra."""

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra: LieAlgebraA, matrix: ExactMatrix):
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("GElement is immutable")

    @property
    def coords(self) -> tuple[Scalar, ...]:
        return self.algebra.coords_of_matrix(self.matrix)

    def __add__(self, other: "GElement") -> "GElement":
        _same(self, other)
        return GElement(self.algebra, self.matrix + other.matrix)

    def __sub__(self, other: "GElement") -> "GElement":
        _same(self, other)
        return GElement(self.algebra, self.matrix - other.matrix)

    def __neg__(self) -> "GElement":
        return GElement(self.algebra, -self.matrix)

    def scale(self, c) -> "GElement":
        return GElement(self.algebra, self.matrix.scale(c))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def is_nilpotent(self) -> bool:
        return self.matrix.matpow(self.algebra.n).is_zero()

    def is_diagonal(self) -> bool:
        m = self.matrix
        return all(
            m.entries[i][j].is_zero()
            for i in range(m.rows)
            for j in range(m.cols)
            if i != j
        )

    def __eq__(self, other):
        if not isinstance(other, GElement):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.algebra.n, self.matrix))

    def __str__(self):
        return str(self.matrix)

    def __repr__(self):
        flat = "; ".join(
            ", ".join(str(v) for v in row) for row in self.matrix.entries
        )
        return f"GElement[{flat}]"

    # -- serialization -----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "n": self.algebra.n,
            "entries": [
                [str(v) for v in row] for row in self.matrix.entries
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "GElement":
        try:
            n = int(data["n"])
            entries = data["entries"]
        except (KeyError, TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed element JSON: {exc}") from exc
        if len(entries) != n or any(len(r) != n for r in entries):
            raise PreconditionError("element JSON has wrong shape")
        mat = ExactMatrix([[scalar_from_str(v) for v in row] for row in entries])
        return sl(n).element(mat)

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "GElement":
        return GElement.from_json_dict(json.loads(text))


def _same(x: GElement, y: GElement):
    if x.algebra != y.algebra:
        raise AlgebraMismatchError("elements live in different algebras")


# -- structure operations ----------------------------------------------------------


def bracket(x: GElement, y: GElement) -> GElement:
    _same(x, y)
    return GElement(x.algebra, x.matrix * y.matrix - y.matrix * x.matrix)


def invariant_form(x: GElement, y: GElement) -> Scalar:
    """Trace form tr(xy); the invariant bilinear form used throughout."""
    _same(x, y)
    return (x.matrix * y.matrix).trace()


def killing_form(x: GElement, y: GElement) -> Scalar:
    """tr(ad_x ad_y), computed from adjoint matrices.  Equals 2n tr(xy);
    kept as an independent oracle for the trace form."""
    _same(x, y)
    ax = ad_matrix(x)
    ay = ad_matrix(y)
    return (ax * ay).trace()


def ad_matrix(x: GElement) -> ExactMatrix:
    """Matrix of ad_x = [x, -] in the coordinate basis."""
    L = x.algebra
    cols = []
    for e in L.basis():
        cols.append(bracket(x, e).coords)
    return ExactMatrix.from_columns(cols)


def centralizer(x: GElement) -> list[GElement]:
    """Canonical basis of g_x = ker ad_x."""
    L = x.algebra
    ker = mat_kernel(ad_matrix(x))
    return [L.element_from_coords(v) for v in canonical_basis(ker)]


def is_regular(x: GElement) -> bool:
    """dim ker ad_x == rank.  Cross-checked in tests against the
    nonderogatory criterion (char poly == min poly)."""
    ker = mat_kernel(ad_matrix(x))
    return len(ker) == x.algebra.rank


def is_regular_nonderogatory(x: GElement) -> bool:
    """Oracle: x is regular iff its char poly equals its min poly."""
    return char_poly(x.matrix) == min_poly(x.matrix)


@dataclass(frozen=True)
class JordanData:
    """Additive Jordan decomposition x = s + nil with a witness polynomial:
    s = witness(x), computed without leaving Q(i)."""

    s: GElement
    nil: GElement
    witness: tuple[Scalar, ...]  # unipoly, low degree first


def jordan_chevalley(x: GElement) -> JordanData:
    """Jordan decomposition via Newton iteration on the squarefree part of
    the characteristic polynomial.

    With p the char poly, q its squarefree part and u q + v q' = 1, iterate
    z <- z - v(z) q(z) (mod p) starting from z = t.  Each step doubles the
    q-adic accuracy, so ceil(log2(n)) + 1 steps force q(z(x)) = 0; then
    s = z(x) is semisimple and x - s nilpotent, both polynomials in x.
    """
    L = x.algebra
    p = up.uni(char_poly(x.matrix))
    q = up.uni_squarefree_part(p)
    if up.uni_deg(q) == 0:
        raise ValueError("characteristic polynomial degenerated to a constant")
    _, _, v = up.uni_ext_gcd(q, up.uni_deriv(q))
    z = up.uni_x()
    steps = ceil(log2(L.n)) + 1 if L.n > 1 else 1
    for _ in range(steps):
        qz = up.uni_compose_mod(q, z, p)
        if up.uni_is_zero(qz):
            break
        vz = up.uni_compose_mod(v, z, p)
        z = up.uni_mod(up.uni_sub(z, up.uni_mul(vz, qz)), p)
    s_mat = _poly_at_matrix(z, x.matrix)
    # the iteration certificate: q(s) = 0, i.e. s is semisimple
    if not _poly_at_matrix(up.uni_compose_mod(q, z, p), x.matrix).is_zero():
        raise ArithmeticError("Jordan iteration failed to converge")
    s = L.element(s_mat)
    nil = x - s
    if not nil.is_nilpotent():
        raise ArithmeticError("Jordan nilpotent part is not nilpotent")
    return JordanData(s=s, nil=nil, witness=z)


def _poly_at_matrix(p: up.Poly, m: ExactMatrix) -> ExactMatrix:
    n = m.rows
    acc = ExactMatrix.zeros(n, n)
    for c in reversed(p):
        acc = acc * m + ExactMatrix.identity(n).scale(c)
    return acc


# -- Weyl group ---------------------------------------------------------------------


@dataclass(frozen=True)
class WeylElement:
    """A permutation of diagonal slots; perm[i] = image of slot i."""

    perm: tuple[int, ...]

    def apply_to_diagonal(self, values: Sequence[Scalar]) -> tuple[Scalar, ...]:
        """Permute diagonal values: slot perm[i] receives value i."""
        out = [Scalar(0)] * len(self.perm)
        for i, p in enumerate(self.perm):
            out[p] = as_scalar(values[i])
        return tuple(out)

    def compose(self, other: "WeylElement") -> "WeylElement":
        return WeylElement(tuple(self.perm[other.perm[i]] for i in range(len(self.perm))))

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return WeylElement(tuple(inv))

    def is_identity(self) -> bool:
        return all(p == i for i, p in enumerate(self.perm))


def weyl_group(n: int) -> list[WeylElement]:
    """All n! diagonal-slot permutations, in lexicographic order."""
    return [WeylElement(p) for p in itertools.permutations(range(n))]


def weyl_stabilizer(x: GElement) -> list[WeylElement]:
    """Permutations fixing the diagonal of x (x must be diagonal)."""
    if not x.is_diagonal():
        raise PreconditionError("weyl_stabilizer needs a diagonal element")
    diag = [x.matrix.entries[i][i] for i in range(x.algebra.n)]
    out = []
    for w in weyl_group(x.algebra.n):
        if w.apply_to_diagonal(diag) == tuple(diag):
            out.append(w)
    return out


def apply_weyl(w: WeylElement, x: GElement) -> GElement:
    """Conjugate a diagonal element by the permutation matrix of w."""
    if not x.is_diagonal():
        raise PreconditionError("apply_weyl needs a diagonal element")
    diag = [x.matrix.entries[i][i] for i in range(x.algebra.n)]
    return x.algebra.element(ExactMatrix.diagonal(w.apply_to_diagonal(diag)))
