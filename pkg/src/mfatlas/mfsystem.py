"""Construction and analysis of shifted invariant systems on sl_n.

For a regular shift element a, each invariant generator f_i (the trace power
of degree d_i = i + 1) expands along the line x + lambda a as

    f_i(x + lambda a) = sum_{j < d_i} f_ij(x) lambda^j + f_i(a) lambda^{d_i},

and the system F_a collects the f_i together with all proper coefficients
f_ij (j >= 1), giving b = (dim + rank) / 2 polynomials.  The component order
everywhere is f_1, ..., f_r, then f_ij for i ascending and j = 1..d_i - 1.

All constructions come with exact certificates: generators are certified
functionally independent, the assembled system is certified of full rank b
at a witness point, and strong regularity of a point is certified both by
the Jacobian rank criterion and by a Krylov determinant certificate for
regularity of the whole line x + C a.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import (
    AlgebraMismatchError,
    CertificationError,
    NonHomogeneousError,
    PreconditionError,
    RegularityError,
)
from .lie import GElement, LieAlgebraA, bracket, is_regular
from .linalg import ExactMatrix, Vector, canonical_basis, mat_rank
from .mpoly import MPoly, mpoly_det, mpoly_mat_mul, mpoly_mat_trace
from .sampling import random_element, random_rational, rng_for
from .scalar import Scalar, as_scalar
from . import unipoly as up

FibreValue = tuple[Scalar, ...]


# -- invariant generators -------------------------------------------------------


_GEN_CACHE: dict[int, list[MPoly]] = {}


def invariant_generators(L: LieAlgebraA) -> list[MPoly]:
    """Trace powers tr(x^2), ..., tr(x^n): free generators of the invariant
    ring, certified functionally independent at a witness point."""
    if L.n in _GEN_CACHE:
        return list(_GEN_CACHE[L.n])
    X = L.generic_matrix()
    gens = []
    P = X
    for d in range(2, L.n + 1):
        P = mpoly_mat_mul(P, X)
        gens.append(mpoly_mat_trace(P))
    witness = _independence_witness(L)
    jac = ExactMatrix(
        [
            [g.diff(v).eval(witness) for v in L.coord_names]
            for g in gens
        ]
    )
    if mat_rank(jac) != L.rank:
        raise CertificationError("invariant generators failed independence check")
    _GEN_CACHE[L.n] = gens
    return list(gens)


def _independence_witness(L: LieAlgebraA) -> dict[str, Scalar]:
    # distinct-eigenvalue diagonal matrix: a regular point where the trace
    # powers have independent differentials
    n = L.n
    diag = [Scalar(k + 1) for k in range(n - 1)]
    diag.append(-sum(diag, Scalar(0)))
    m = ExactMatrix.diagonal(diag)
    coords = L.coords_of_matrix(m)
    return dict(zip(L.coord_names, coords))


def shift_expand(f: MPoly, d: int, a: GElement) -> list[MPoly]:
    """Coefficients [f_0, ..., f_{d-1}] of f(x + lambda a) as polynomials in
    x, checking that the top coefficient collapses to the constant f(a).

    f must be homogeneous of total degree d in the coordinates of a's
    algebra; then f_j is homogeneous of degree d - j.
    """
    L = a.algebra
    if f.vars != L.coord_names:
        raise PreconditionError("polynomial is not over the algebra coordinates")
    if f.homogeneous_degree() != d:
        raise NonHomogeneousError(f"expected homogeneous degree {d}")
    ext = L.coord_names + ("lam",)
    lam = MPoly.var(ext, "lam")
    acoords = a.coords
    mapping = {
        name: MPoly.var(ext, name) + MPoly.const(ext, acoords[k]) * lam
        for k, name in enumerate(L.coord_names)
    }
    shifted = f.subs(ext, mapping)
    buckets = shifted.collect("lam")
    top = buckets.get(d, MPoly.zero(ext))
    if top != MPoly.const(ext, f.eval(acoords)):
        raise CertificationError("top shift coefficient is not f(a)")
    out = []
    for j in range(d):
        out.append(buckets.get(j, MPoly.zero(ext)).project(L.coord_names))
    return out


class ShiftSystem:
    """The system F_a = (f_1, ..., f_r, f_ij) for a regular shift element."""

    def __init__(self, a: GElement, components: list[MPoly], labels: list[tuple[int, int]],
                 generators: list[MPoly], certificate_point: GElement):
        self.algebra = a.algebra
        self.a = a
        self.components = components
        self.labels = labels
        self.generators = generators
        self.degrees = [i + 1 for i in range(1, self.algebra.n)]
        self.b = self.algebra.b
        self.certificate_point = certificate_point
        self._jacobian: list[list[MPoly]] | None = None
        self._gradients: list[list[list[MPoly]]] | None = None
        self._gen_gradients: list[list[list[MPoly]]] | None = None

    # -- evaluation ---------------------------------------------------------------

    def evaluate(self, x: GElement) -> FibreValue:
        """Value vector of all components at x, via the lambda-matrix trace
        path (no symbolic substitution)."""
        if x.algebra != self.algebra:
            raise AlgebraMismatchError("point from a different algebra")
        return mf_values(self.a, x)

    def evaluate_symbolic(self, x: GElement) -> FibreValue:
        """Independent evaluation path: plug coordinates into the symbolic
        components."""
        point = dict(zip(self.algebra.coord_names, x.coords))
        return tuple(c.eval(point) for c in self.components)

    @property
    def display_scale(self) -> tuple[Scalar, ...]:
        """Diagonal factors aligning raw expansion coefficients with the
        conventional printed normalization for n = 2, 3."""
        from fractions import Fraction

        if self.algebra.n == 2:
            return (Scalar(Fraction(1, 2)), Scalar(Fraction(1, 2)))
        if self.algebra.n == 3:
            return (Scalar(1), Scalar(1), Scalar(1), Scalar(1), Scalar(2))
        return tuple(Scalar(1) for _ in range(self.b))

    def evaluate_scaled(self, x: GElement) -> FibreValue:
        return tuple(s * v for s, v in zip(self.display_scale, self.evaluate(x)))

    def scaled_components(self) -> list[MPoly]:
        return [c * s for s, c in zip(self.display_scale, self.components)]

    # -- derivatives -------------------------------------------------------------------

    def jacobian_polys(self) -> list[list[MPoly]]:
        if self._jacobian is None:
            self._jacobian = [
                [c.diff(v) for v in self.algebra.coord_names]
                for c in self.components
            ]
        return self._jacobian

    def jacobian_at(self, x: GElement) -> ExactMatrix:
        point = dict(zip(self.algebra.coord_names, x.coords))
        return ExactMatrix(
            [[e.eval(point) for e in row] for row in self.jacobian_polys()]
        )

    def component_gradients(self) -> list[list[list[MPoly]]]:
        """Trace-form gradient matrices of every component."""
        if self._gradients is None:
            self._gradients = [gradient_matrix(self.algebra, c) for c in self.components]
        return self._gradients

    def generator_gradients(self) -> list[list[list[MPoly]]]:
        if self._gen_gradients is None:
            self._gen_gradients = [gradient_matrix(self.algebra, g) for g in self.generators]
        return self._gen_gradients

    def __repr__(self):
        return f"ShiftSystem(sl({self.algebra.n}), b={self.b})"


def build_system(a: GElement, certify: bool = True) -> ShiftSystem:
    """Assemble F_a for a regular shift element, with a full-rank certificate."""
    L = a.algebra
    if not is_regular(a):
        raise RegularityError("shift element must be regular")
    gens = invariant_generators(L)
    per_gen: list[list[MPoly]] = []
    for i, f in enumerate(gens, start=1):
        per_gen.append(shift_expand(f, i + 1, a))
    components: list[MPoly] = [per_gen[i][0] for i in range(len(gens))]
    labels: list[tuple[int, int]] = [(i + 1, 0) for i in range(len(gens))]
    for i in range(len(gens)):
        for j in range(1, i + 2):
            components.append(per_gen[i][j])
            labels.append((i + 1, j))
    if len(components) != L.b:
        raise CertificationError("component count is not b")
    sys_ = ShiftSystem(a, components, labels, gens, a)
    if certify:
        rng = rng_for(f"build-cert:{L.n}:" + ",".join(str(c) for c in a.coords), 0)
        point = None
        for _ in range(40):
            x = random_element(L, rng)
            if mat_rank(sys_.jacobian_at(x)) == L.b:
                point = x
                break
        if point is None:
            raise CertificationError("no full-rank witness point found")
        sys_.certificate_point = point
    return sys_


# -- fast value path -----------------------------------------------------------------


def _uni_mat_mul(A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc: up.Poly = ()
            for t in range(k):
                acc = up.uni_add(acc, up.uni_mul(A[i][t], B[t][j]))
            row.append(acc)
        out.append(row)
    return out


def mf_values(a: GElement, x: GElement) -> FibreValue:
    """All component values of F_a at x, reading lambda-coefficients off
    tr((x + lambda a)^d).  Works for any a (regularity not needed to
    evaluate); order matches ShiftSystem.components."""
    if a.algebra != x.algebra:
        raise AlgebraMismatchError("mixed algebras")
    n = a.algebra.n
    M = [
        [
            up.uni([x.matrix.entries[i][j], a.matrix.entries[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    heads: list[Scalar] = []
    tails: list[Scalar] = []
    P = M
    for d in range(2, n + 1):
        P = _uni_mat_mul(P, M)
        tr: up.Poly = ()
        for i in range(n):
            tr = up.uni_add(tr, P[i][i])
        coeffs = list(tr) + [Scalar(0)] * (d + 1 - len(tr))
        heads.append(coeffs[0])
        tails.extend(coeffs[1:d])
    return tuple(heads + tails)


def invariant_values_along(a: GElement, x: GElement, lam) -> tuple[Scalar, ...]:
    """(f_1, ..., f_r) evaluated at x + lam a."""
    shifted = x + a.scale(as_scalar(lam))
    vals = []
    P = shifted.matrix
    for d in range(2, a.algebra.n + 1):
        P = P * shifted.matrix
        vals.append(P.trace())
    return tuple(vals)


# -- Poisson structure ------------------------------------------------------------------


def gradient_matrix(L: LieAlgebraA, f: MPoly) -> list[list[MPoly]]:
    """Trace-form gradient of f as an n x n polynomial matrix: the unique
    trace-free G(x) with df_x(y) = tr(G(x) y).

    Off-diagonal: G[j][i] = df/dx_ij.  Diagonal: solved from the Cartan
    directional derivatives g_k = df/dh_k via t_k - t_{k+1} = g_k and
    sum t_k = 0.
    """
    if f.vars != L.coord_names:
        raise PreconditionError("polynomial is not over the algebra coordinates")
    n = L.n
    zero = MPoly.zero(L.coord_names)
    G = [[zero for _ in range(n)] for _ in range(n)]
    for idx, (i, j) in enumerate(L.offdiag_positions):
        G[j][i] = f.diff(L.coord_names[idx])
    gs = [f.diff(f"h{k + 1}") for k in range(n - 1)]
    # t_1 = (1/n) sum (n - j) g_j, then t_{k+1} = t_k - g_k
    t = MPoly.zero(L.coord_names)
    for j in range(1, n):
        t = t + gs[j - 1] * Scalar(n - j)
    from fractions import Fraction

    t = t * Scalar(Fraction(1, n))
    G[0][0] = t
    for k in range(1, n):
        t = t - gs[k - 1]
        G[k][k] = t
    return G


def gradient_at(L: LieAlgebraA, grad: list[list[MPoly]], x: GElement) -> GElement:
    point = dict(zip(L.coord_names, x.coords))
    return L.element(
        ExactMatrix([[e.eval(point) for e in row] for row in grad])
    )


def poisson_bracket(f: MPoly, g: MPoly, L: LieAlgebraA) -> MPoly:
    """{f, g}(x) = <x, [grad f(x), grad g(x)]> as a polynomial."""
    Gf = gradient_matrix(L, f)
    Gg = gradient_matrix(L, g)
    C = _mat_sub(mpoly_mat_mul(Gf, Gg), mpoly_mat_mul(Gg, Gf))
    X = L.generic_matrix()
    return mpoly_mat_trace(mpoly_mat_mul(X, C))


def poisson_bracket_grads(L: LieAlgebraA, Gf, Gg) -> MPoly:
    C = _mat_sub(mpoly_mat_mul(Gf, Gg), mpoly_mat_mul(Gg, Gf))
    X = L.generic_matrix()
    return mpoly_mat_trace(mpoly_mat_mul(X, C))


def _mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


# -- alternative generators ----------------------------------------------------------------


def alt_generators(sys_: ShiftSystem, lambda_table: Sequence[Sequence] | None = None) -> list[list[MPoly]]:
    """g_ij(x) = f_i(x + lambda_j a) - f_i(lambda_j a) for a table of
    pairwise-distinct lambdas per row; row i spans the same space as
    (f_i, f_i1, ..., f_i,d-1) by Vandermonde inversion."""
    L = sys_.algebra
    if lambda_table is None:
        lambda_table = [[Scalar(j) for j in range(i + 2)] for i in range(L.n - 1)]
    if len(lambda_table) != L.n - 1:
        raise PreconditionError("need one lambda row per generator")
    out: list[list[MPoly]] = []
    acoords = sys_.a.coords
    for i, f in enumerate(sys_.generators):
        d = i + 2
        lams = [as_scalar(v) for v in lambda_table[i]]
        if len(lams) != d:
            raise PreconditionError(f"row {i + 1} must have {d} lambdas")
        if len({(s.re, s.im) for s in lams}) != d:
            raise PreconditionError(f"row {i + 1} lambdas are not pairwise distinct")
        fa = f.eval(acoords)
        row = []
        for lam in lams:
            mapping = {
                name: MPoly.var(L.coord_names, name)
                + MPoly.const(L.coord_names, lam * acoords[k])
                for k, name in enumerate(L.coord_names)
            }
            g = f.subs(L.coord_names, mapping) - MPoly.const(L.coord_names, fa * lam**d)
            row.append(g)
        out.append(row)
    return out


# -- fibres and strong regularity ---------------------------------------------------------------


def fibre_membership(sys_: ShiftSystem, x: GElement, y: GElement) -> bool:
    """Do x and y take the same value under every component of F_a?"""
    return sys_.evaluate(x) == sys_.evaluate(y)


def fibre_membership_finite_lambda(sys_: ShiftSystem, x: GElement, y: GElement) -> bool:
    """Membership via invariant values at finitely many shifts: per
    generator f_i, compare f_i(x + lambda a) and f_i(y + lambda a) at
    lambda = 0 and d_i - 1 further rationals at which x + lambda a is
    regular."""
    L = sys_.algebra
    a = sys_.a
    for i in range(L.n - 1):
        d = i + 2
        lams: list[Scalar] = [Scalar(0)]
        cand = 1
        while len(lams) < d:
            lam = Scalar(cand)
            if is_regular(x + a.scale(lam)):
                lams.append(lam)
            cand += 1
            if cand > 200:
                raise RuntimeError("could not find regular shift values")
        for lam in lams:
            vx = invariant_values_along(a, x, lam)[i]
            vy = invariant_values_along(a, y, lam)[i]
            if vx != vy:
                return False
    return True


def krylov_line_regular(x: GElement, a: GElement) -> bool:
    """Exact certificate that the whole line x + C a lies in the regular
    locus.

    K_v(lambda) = det[v | Mv | ... | M^{n-1}v] with M = x + lambda a and v a
    symbolic vector; x + lambda0 a is regular iff K_v(lambda0) is nonzero
    for some v.  Hence the line is regular everywhere iff the gcd of the
    v-monomial coefficient polynomials c_mu(lambda) is a nonzero constant.
    """
    if x.algebra != a.algebra:
        raise AlgebraMismatchError("mixed algebras")
    n = x.algebra.n
    vars_ = ("lam",) + tuple(f"v{k + 1}" for k in range(n))
    lam = MPoly.var(vars_, "lam")
    M = [
        [
            MPoly.const(vars_, x.matrix.entries[i][j])
            + lam * MPoly.const(vars_, a.matrix.entries[i][j])
            for j in range(n)
        ]
        for i in range(n)
    ]
    v = [[MPoly.var(vars_, f"v{k + 1}")] for k in range(n)]
    cols = [v]
    for _ in range(n - 1):
        cols.append(mpoly_mat_mul(M, cols[-1]))
    K = mpoly_det([[cols[c][r][0] for c in range(n)] for r in range(n)])
    groups: dict[tuple[int, ...], dict[int, Scalar]] = {}
    for e, cval in K.terms.items():
        lam_exp = e[0]
        v_exp = e[1:]
        groups.setdefault(v_exp, {})[lam_exp] = cval
    if not groups:
        return False
    g: up.Poly = ()
    for coeffs in groups.values():
        top = max(coeffs)
        poly = up.uni([coeffs.get(k, Scalar(0)) for k in range(top + 1)])
        g = up.uni_gcd(g, poly)
        if up.uni_deg(g) == 0:
            return True
    return (not up.uni_is_zero(g)) and up.uni_deg(g) == 0


def is_strongly_regular(sys_: ShiftSystem, x: GElement, certify: bool = False) -> bool:
    """Strong regularity of x for F_a: the b differentials are independent
    at x, tested as rank dF_a(x) = b.

    With certify=True the Krylov line certificate is computed as well and
    must agree (the two criteria are equivalent for regular a), and
    regularity of x + lambda a is spot-checked at 2b + 1 rational lambdas.
    """
    if x.algebra != sys_.algebra:
        raise AlgebraMismatchError("point from a different algebra")
    primary = mat_rank(sys_.jacobian_at(x)) == sys_.b
    if certify:
        cert = krylov_line_regular(x, sys_.a)
        if cert != primary:
            raise CertificationError(
                "Jacobian rank and Krylov line certificate disagree"
            )
        if primary:
            for k in range(2 * sys_.b + 1):
                if not is_regular(x + sys_.a.scale(Scalar(k))):
                    raise CertificationError(
                        "sampled point on a certified-regular line is singular"
                    )
    return primary


def tangent_space(sys_: ShiftSystem, x: GElement) -> list[GElement]:
    """Canonical basis of the tangent space at a strongly regular point,
    computed three equivalent ways and cross-checked exactly:

      (1) span [x, grad f_ij(x)] over the shifted components (j >= 1),
      (2) the same span including the invariants (their gradients
          centralize x, contributing nothing),
      (3) span of the lambda-coefficients of [a, grad f_i(x + lambda a)].
    """
    L = sys_.algebra
    if not is_strongly_regular(sys_, x):
        raise RegularityError("tangent_space needs a strongly regular point")
    grads = sys_.component_gradients()
    vec_shift: list[Vector] = []
    vec_all: list[Vector] = []
    for grad, (i, j) in zip(grads, sys_.labels):
        gval = gradient_at(L, grad, x)
        br = bracket(x, gval)
        if j == 0:
            if not br.is_zero():
                raise CertificationError("invariant gradient fails to centralize")
        else:
            vec_shift.append(br.coords)
        vec_all.append(br.coords)
    T1 = canonical_basis(vec_shift)
    T2 = canonical_basis(vec_all)
    if T1 != T2:
        raise CertificationError("tangent space routes (1) and (2) disagree")
    # route (3): coefficients in lambda of [a, grad f_i(x + lambda a)]
    n = L.n
    vec3: list[Vector] = []
    xc = x.coords
    ac = sys_.a.coords
    for grad in sys_.generator_gradients():
        # each entry becomes a univariate polynomial in lambda
        entry_polys = []
        for row in grad:
            prow = []
            for e in row:
                shifted = _eval_along_line(e, L, xc, ac)
                prow.append(shifted)
            entry_polys.append(prow)
        deg = max((up.uni_deg(p) for row in entry_polys for p in row), default=-1)
        amat = sys_.a.matrix
        for k in range(deg + 1):
            Gk = ExactMatrix(
                [
                    [p[k] if k < len(p) else Scalar(0) for p in row]
                    for row in entry_polys
                ]
            )
            comm = amat * Gk - Gk * amat
            vec3.append(L.coords_of_matrix(comm))
    T3 = canonical_basis(vec3)
    if T3 != T1:
        raise CertificationError("tangent space route (3) disagrees")
    return [L.element_from_coords(v) for v in T1]


def _eval_along_line(p: MPoly, L: LieAlgebraA, xc: tuple[Scalar, ...], ac: tuple[Scalar, ...]) -> up.Poly:
    """Evaluate a coordinate polynomial at x + lambda a, returning a
    univariate polynomial in lambda."""
    out: up.Poly = ()
    for e, c in p.terms.items():
        term: up.Poly = up.uni([c])
        for idx, k in enumerate(e):
            if k:
                lin = up.uni([xc[idx], ac[idx]])
                for _ in range(k):
                    term = up.uni_mul(term, lin)
        out = up.uni_add(out, term)
    return out


# -- the Tarasov section -----------------------------------------------------------------------


@dataclass
class TarasovReport:
    passed: bool
    jacobian_constant: str
    section_dim: int
    strong_regular_checked: int
    injectivity_pairs: int
    failures: list[str] = field(default_factory=list)


def tarasov_check(a: GElement, sample_count: int = 50, seed: int = 0) -> TarasovReport:
    """Certify that xi + b is a section of F_a for diagonal regular a:
    the restricted Jacobian determinant is a nonzero constant, sampled
    section points are strongly regular, and sampled distinct pairs take
    distinct values."""
    L = a.algebra
    if not a.is_diagonal():
        raise PreconditionError("the section check needs a diagonal shift element")
    diag = [a.matrix.entries[i][i] for i in range(L.n)]
    if len({(d.re, d.im) for d in diag}) != L.n:
        raise PreconditionError("diagonal entries must be pairwise distinct")
    sys_ = build_system(a)
    n = L.n
    tvars = tuple(f"t{k + 1}" for k in range(L.b))
    mapping: dict[str, MPoly] = {}
    t_iter = iter(tvars)
    for idx, (i, j) in enumerate(L.offdiag_positions):
        name = L.coord_names[idx]
        if i < j:
            mapping[name] = MPoly.var(tvars, next(t_iter))
        else:
            mapping[name] = MPoly.const(tvars, Scalar(1) if i == j + 1 else Scalar(0))
    for k in range(n - 1):
        mapping[f"h{k + 1}"] = MPoly.var(tvars, next(t_iter))
    restricted = [c.subs(tvars, mapping) for c in sys_.components]
    jac = [[rc.diff(tv) for tv in tvars] for rc in restricted]
    det = mpoly_det(jac)
    failures: list[str] = []
    const_ok = det.is_constant() and not det.is_zero()
    if not const_ok:
        failures.append("restricted Jacobian determinant is not a nonzero constant")
    jc = str(det.constant_term()) if det.is_constant() else str(det)
    rng = rng_for(f"tarasov:{L.n}", seed)
    checked = 0
    points: list[GElement] = []
    for _ in range(sample_count):
        tvals = {tv: Scalar(random_rational(rng)) for tv in tvars}
        coords = [mapping[name].eval([tvals[tv] for tv in tvars]) for name in L.coord_names]
        x = L.element_from_coords(coords)
        points.append(x)
        if not is_strongly_regular(sys_, x, certify=True):
            failures.append("section point not strongly regular")
            break
        checked += 1
    pairs = 0
    for idx in range(len(points)):
        for jdx in range(idx + 1, min(idx + 4, len(points))):
            if points[idx] == points[jdx]:
                continue
            pairs += 1
            if sys_.evaluate(points[idx]) == sys_.evaluate(points[jdx]):
                failures.append("distinct section points share a value vector")
    return TarasovReport(
        passed=not failures,
        jacobian_constant=jc,
        section_dim=L.b,
        strong_regular_checked=checked,
        injectivity_pairs=pairs,
        failures=failures,
    )
