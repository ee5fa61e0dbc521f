"""Invariant flags, their stabilizer parabolics, and the intersection algebra b^a.

For a regular element a, each generalized eigenspace of a is a single Jordan
block, so the a-invariant subspaces of C^n are exactly the direct sums of
chain subspaces ker((a - c)^j), one per eigenvalue c.  Invariant partial
flags of a given composition are therefore lattice paths in the product of
chains, a finite set; for non-regular a the invariant subspaces form
infinite families and enumeration is refused.

A parabolic enters the atlas as the stabilizer of an invariant flag.  It is
constructed by conjugating the block pattern with the adapted basis (Jordan
chain vectors, eigenvalues ordered by (real, imaginary) within each flag
step) and certified against the stabilizer equations Y V_t <= V_t.

b^a is computed two independent ways: as the intersection of the spans of
all Borel members of the atlas, and structurally as the centre of the
centralizer of the semisimple part plus the unique Borel of the centralizer
containing the nilpotent part.  The two must agree exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    CertificationError,
    InfiniteFamilyError,
    MembershipError,
    PreconditionError,
    UnsupportedElementError,
)
from .lie import GElement, LieAlgebraA, bracket, is_regular
from .linalg import (
    ExactMatrix,
    Vector,
    canonical_basis,
    char_poly,
    mat_kernel,
    mat_rank,
    solve,
    span_contains,
    span_equal,
    span_intersection,
)
from .scalar import Scalar
from . import unipoly as up


# -- spans of elements ---------------------------------------------------------


def elements_span(elems: Sequence[GElement]) -> tuple[Vector, ...]:
    """Canonical basis (coordinate vectors) of the span of the elements."""
    return canonical_basis([e.coords for e in elems])


def elements_span_contains(elems: Sequence[GElement], x: GElement) -> bool:
    return span_contains([e.coords for e in elems], x.coords)


def span_to_elements(L: LieAlgebraA, vectors: Sequence[Vector]) -> list[GElement]:
    return [L.element_from_coords(v) for v in vectors]


def support_mask(L: LieAlgebraA, elems: Sequence[GElement]) -> list[list[int]]:
    """Entry-support pattern of a span: mask[i][j] = 1 if some element of the
    span has a nonzero (i, j) entry."""
    n = L.n
    mask = [[0] * n for _ in range(n)]
    for v in elements_span(elems):
        m = L.matrix_of_coords(v)
        for i in range(n):
            for j in range(n):
                if not m.entries[i][j].is_zero():
                    mask[i][j] = 1
    return mask


def mask_strings(mask: list[list[int]]) -> list[str]:
    return ["".join("*" if v else "0" for v in row) for row in mask]


# -- eigen chains ----------------------------------------------------------------


@dataclass(frozen=True)
class EigenChain:
    """One generalized eigenspace of a regular element: a single Jordan
    chain w_1, ..., w_m with (a - c) w_j = w_{j-1} and w_0 = 0."""

    value: Scalar
    mult: int
    vectors: tuple[Vector, ...]


def eigen_chains(a: GElement) -> list[EigenChain]:
    """Jordan chains of a regular element, eigenvalues sorted by (re, im).

    Raises UnsupportedElementError if some eigenvalue lies outside Q(i) and
    InfiniteFamilyError if a is not regular.
    """
    if not is_regular(a):
        raise InfiniteFamilyError(
            "element is not regular; invariant subspaces form infinite families"
        )
    n = a.algebra.n
    p = up.uni(char_poly(a.matrix))
    roots, rem_deg = up.uni_roots_gaussian(p)
    if rem_deg or sum(m for _, m in roots) != n:
        raise UnsupportedElementError(
            "an eigenvalue lies outside Q(i); refusing to extend the base field"
        )
    chains = []
    ident = ExactMatrix.identity(n)
    for c, m in roots:
        N = a.matrix - ident.scale(c)
        Nm = N.matpow(m)
        Nm1 = N.matpow(m - 1)
        top = None
        for v in mat_kernel(Nm):
            if any(not t.is_zero() for t in Nm1.apply(v)):
                top = v
                break
        if top is None:
            raise CertificationError("no Jordan chain generator found")
        vecs = []
        cur = tuple(top)
        stack = [cur]
        for _ in range(m - 1):
            cur = N.apply(cur)
            stack.append(cur)
        vecs = list(reversed(stack))  # w_1 (eigenvector) first
        if any(not t.is_zero() for t in N.apply(vecs[0])):
            raise CertificationError("chain head is not an eigenvector")
        chains.append(EigenChain(value=c, mult=m, vectors=tuple(vecs)))
    chains.sort(key=lambda ch: ch.value.sort_key())
    return chains


# -- flags --------------------------------------------------------------------------


@dataclass(frozen=True)
class Flag:
    """An a-invariant partial flag, recorded as cumulative chain levels."""

    composition: tuple[int, ...]
    levels: tuple[tuple[int, ...], ...]  # after each step, per chain
    step_vectors: tuple[tuple[Vector, ...], ...]  # vectors added per step
    subspaces: tuple[tuple[Vector, ...], ...]  # canonical cumulative bases

    def key(self) -> tuple:
        return self.subspaces


def compositions(n: int) -> list[tuple[int, ...]]:
    """All compositions of n, deterministic order."""
    out: list[tuple[int, ...]] = []

    def rec(rest: int, acc: tuple[int, ...]):
        if rest == 0:
            out.append(acc)
            return
        for k in range(1, rest + 1):
            rec(rest - k, acc + (k,))

    rec(n, ())
    return out


def invariant_flags(a: GElement, composition: Sequence[int]) -> list[Flag]:
    """All a-invariant flags of the given composition (lattice paths in the
    product of Jordan chains)."""
    comp = tuple(int(k) for k in composition)
    if any(k <= 0 for k in comp) or sum(comp) != a.algebra.n:
        raise PreconditionError(f"not a composition of {a.algebra.n}: {comp}")
    chains = eigen_chains(a)
    mults = [ch.mult for ch in chains]
    flags: list[Flag] = []

    def rec(step: int, level: tuple[int, ...], levels_acc, steps_acc):
        if step == len(comp):
            cumulative = []
            acc_vecs: list[Vector] = []
            for sv in steps_acc:
                acc_vecs.extend(sv)
                cumulative.append(canonical_basis(acc_vecs))
            flags.append(
                Flag(
                    composition=comp,
                    levels=tuple(levels_acc),
                    step_vectors=tuple(steps_acc),
                    subspaces=tuple(cumulative),
                )
            )
            return
        need = comp[step]
        ranges = [range(0, min(need, mults[c] - level[c]) + 1) for c in range(len(chains))]
        for inc in itertools.product(*ranges):
            if sum(inc) != need:
                continue
            new_level = tuple(l + i for l, i in zip(level, inc))
            added: list[Vector] = []
            for c, ch in enumerate(chains):
                for j in range(level[c], new_level[c]):
                    added.append(ch.vectors[j])
            rec(
                step + 1,
                new_level,
                levels_acc + [new_level],
                steps_acc + [tuple(added)],
            )

    rec(0, (0,) * len(chains), [], [])
    return flags


# -- parabolic stabilizers -------------------------------------------------------------


class FlagParabolic:
    """Stabilizer of an invariant flag, with adapted basis and Levi data."""

    def __init__(self, a: GElement, flag: Flag):
        L = a.algebra
        self.algebra = L
        self.a = a
        self.flag = flag
        self.blocks = flag.composition
        cols: list[Vector] = []
        for sv in flag.step_vectors:
            cols.extend(sv)
        if len(cols) != L.n:
            raise PreconditionError("flag does not exhaust the space")
        U = ExactMatrix.from_columns(cols)
        self.U = U
        self.U_inv = _inverse(U)
        self.p_basis = self._conjugated_basis(upper=True, include_diag_blocks=True)
        self.l_basis = self._conjugated_basis(upper=False, include_diag_blocks=True)
        self.u_basis = self._conjugated_basis(upper=True, include_diag_blocks=False)
        self.p_span = elements_span(self.p_basis)
        self.u_span = elements_span(self.u_basis)
        self.key = flag.key()

    # block index of a row/column position in the adapted ordering
    def _block_of(self) -> list[int]:
        out = []
        for bi, k in enumerate(self.blocks):
            out.extend([bi] * k)
        return out

    def _conjugated_basis(self, upper: bool, include_diag_blocks: bool) -> list[GElement]:
        L = self.algebra
        n = L.n
        blk = self._block_of()
        out: list[GElement] = []
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if include_diag_blocks:
                    keep = blk[i] <= blk[j] if upper else blk[i] == blk[j]
                else:
                    keep = blk[i] < blk[j]
                if keep:
                    E = ExactMatrix(
                        [
                            [Scalar(1) if (r, c) == (i, j) else Scalar(0) for c in range(n)]
                            for r in range(n)
                        ]
                    )
                    out.append(L.element(self.U * E * self.U_inv))
        if include_diag_blocks:
            for k in range(n - 1):
                H = ExactMatrix.diagonal(
                    [Scalar(1) if t == k else (Scalar(-1) if t == k + 1 else Scalar(0)) for t in range(n)]
                )
                out.append(L.element(self.U * H * self.U_inv))
        return out

    # -- membership and structure -------------------------------------------------

    def contains(self, x: GElement) -> bool:
        return span_contains(self.p_span, x.coords)

    def is_borel(self) -> bool:
        return all(k == 1 for k in self.blocks)

    @property
    def dim_p(self) -> int:
        return len(self.p_span)

    @property
    def dim_u(self) -> int:
        return len(self.u_span)

    def mask(self) -> list[list[int]]:
        return support_mask(self.algebra, self.p_basis)

    def composition(self) -> tuple[int, ...]:
        return self.blocks

    def verify(self) -> None:
        """Certify the construction against the stabilizer equations."""
        if not elements_span_contains(self.p_basis, self.a):
            raise CertificationError("shift element not in its flag stabilizer")
        for y in self.p_basis:
            for sub in self.flag.subspaces:
                for v in sub:
                    img = y.matrix.apply(v)
                    if not span_contains(sub, img):
                        raise CertificationError("basis element fails to stabilize flag")
        if _stabilizer_dimension(self.algebra, self.flag) != self.dim_p:
            raise CertificationError("stabilizer dimension mismatch")
        if len(elements_span(self.l_basis)) + self.dim_u != self.dim_p:
            raise CertificationError("p != l + u dimension split")

    def __repr__(self):
        return f"FlagParabolic(blocks={self.blocks})"


def _inverse(m: ExactMatrix) -> ExactMatrix:
    n = m.rows
    cols = []
    ident = ExactMatrix.identity(n)
    for j in range(n):
        x = solve(m, ident.col(j))
        if x is None:
            raise PreconditionError("singular change of basis")
        cols.append(x)
    return ExactMatrix.from_columns(cols)


def _stabilizer_dimension(L: LieAlgebraA, flag: Flag) -> int:
    """Dimension of {Y in sl_n : Y V_t <= V_t for all t}, by solving the
    linear stabilizer equations in the coordinates."""
    rows: list[list[Scalar]] = []
    basis_mats = [e.matrix for e in L.basis()]
    for sub in flag.subspaces:
        # left annihilator rows w with w . V = 0
        V = ExactMatrix.from_columns(list(sub))
        ann = mat_kernel(V.transpose())
        for v in sub:
            for w in ann:
                row = []
                for bm in basis_mats:
                    img = bm.apply(v)
                    acc = Scalar(0)
                    for wi, xi in zip(w, img):
                        acc = acc + wi * xi
                    row.append(acc)
                rows.append(row)
    if not rows:
        return L.dim
    return L.dim - mat_rank(ExactMatrix(rows))


# -- atlas ---------------------------------------------------------------------------


@dataclass
class BorelAtlas:
    """All Borels and proper non-Borel parabolics containing a regular
    element, plus the intersection algebra b^a and its nilradical u^a."""

    a: GElement
    borels: list[FlagParabolic]
    parabolics: list[FlagParabolic]
    b_a: list[GElement]
    u_a: list[GElement]

    @property
    def members(self) -> list[FlagParabolic]:
        return list(self.borels) + list(self.parabolics)


def enumerate_atlas(a: GElement, verify: bool = True) -> BorelAtlas:
    L = a.algebra
    n = L.n
    borels = [FlagParabolic(a, fl) for fl in invariant_flags(a, (1,) * n)]
    parabolics: list[FlagParabolic] = []
    for comp in compositions(n):
        if len(comp) == n or len(comp) == 1:
            continue
        for fl in invariant_flags(a, comp):
            parabolics.append(FlagParabolic(a, fl))
    if verify:
        for m in borels + parabolics:
            m.verify()
    # route 1: intersection of all Borel spans
    inter = borels[0].p_span
    for bp in borels[1:]:
        inter = span_intersection(inter, bp.p_span)
    b_a = span_to_elements(L, inter)
    u_a = derived_span(b_a)
    # route 2: structural, must agree exactly
    b2, u2 = compute_b_a_structural(a)
    if not span_equal([e.coords for e in b_a], [e.coords for e in b2]):
        raise CertificationError("b^a routes disagree")
    if not span_equal([e.coords for e in u_a], [e.coords for e in u2]):
        raise CertificationError("u^a routes disagree")
    return BorelAtlas(a=a, borels=borels, parabolics=parabolics, b_a=b_a, u_a=u_a)


def derived_span(elems: list[GElement]) -> list[GElement]:
    """Canonical basis of span{[x, y] : x, y in span(elems)}."""
    if not elems:
        return []
    L = elems[0].algebra
    vecs = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            vecs.append(bracket(elems[i], elems[j]).coords)
    return span_to_elements(L, canonical_basis(vecs))


def compute_b_a(a: GElement, atlas: BorelAtlas | None = None) -> tuple[list[GElement], list[GElement]]:
    """(b^a, u^a), certified by both routes.  If an atlas is given its
    intersection route is reused, otherwise the atlas is built."""
    if atlas is None:
        atlas = enumerate_atlas(a)
    return atlas.b_a, atlas.u_a


def compute_b_a_structural(a: GElement) -> tuple[list[GElement], list[GElement]]:
    """b^a = z(g_s) + (unique Borel of [g_s, g_s] containing the nilpotent
    part), built on the adapted chain basis; u^a is its derived algebra."""
    L = a.algebra
    chains = eigen_chains(a)
    cols: list[Vector] = []
    sizes: list[int] = []
    for ch in chains:
        cols.extend(ch.vectors)
        sizes.append(ch.mult)
    U = ExactMatrix.from_columns(cols)
    U_inv = _inverse(U)
    n = L.n
    mats: list[ExactMatrix] = []
    # centre of the centralizer of the semisimple part: one scalar per block,
    # trace-free
    offsets = []
    off = 0
    for m in sizes:
        offsets.append(off)
        off += m
    k = len(sizes)
    for bi in range(k - 1):
        diag = [Scalar(0)] * n
        for t in range(offsets[bi], offsets[bi] + sizes[bi]):
            diag[t] = Scalar(sizes[k - 1])
        for t in range(offsets[k - 1], offsets[k - 1] + sizes[k - 1]):
            diag[t] = Scalar(-sizes[bi])
        mats.append(ExactMatrix.diagonal(diag))
    # upper-triangular part of each block (the unique Borel of the factor
    # sl_{m} containing the single Jordan block nilpotent)
    for bi, m in enumerate(sizes):
        o = offsets[bi]
        for p in range(m):
            for q in range(p + 1, m):
                E = [[Scalar(0)] * n for _ in range(n)]
                E[o + p][o + q] = Scalar(1)
                mats.append(ExactMatrix(E))
        for p in range(m - 1):
            D = [Scalar(0)] * n
            D[o + p] = Scalar(1)
            D[o + p + 1] = Scalar(-1)
            mats.append(ExactMatrix.diagonal(D))
    b_elems = [L.element(U * M * U_inv) for M in mats]
    b_basis = span_to_elements(L, elements_span(b_elems))
    u_basis = derived_span(b_basis)
    return b_basis, u_basis


def levi_projection(p: FlagParabolic, x: GElement) -> GElement:
    """Block-diagonal part of x in the adapted basis; requires x in p."""
    if x.algebra != p.algebra:
        raise PreconditionError("element from a different algebra")
    if not p.contains(x):
        raise MembershipError("element is not in the parabolic")
    Xp = p.U_inv * x.matrix * p.U
    blk = p._block_of()
    n = p.algebra.n
    rows = [
        [
            Xp.entries[i][j] if blk[i] == blk[j] else Scalar(0)
            for j in range(n)
        ]
        for i in range(n)
    ]
    return p.algebra.element(p.U * ExactMatrix(rows) * p.U_inv)


def levi_simple_factors(p: FlagParabolic) -> list[int]:
    """Sizes of the simple factors sl_k (k >= 2) of the Levi."""
    return [k for k in p.blocks if k >= 2]
