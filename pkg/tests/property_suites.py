"""Seeded property suites shared by test_properties and the acceptance gate.

Each suite checks one structural identity on >= `instances` random inputs
spread over the five desk-scale representatives (sl_2 s/n, sl_3 s/r/n),
raising AssertionError with a description on the first violation and
returning the number of instances actually checked.  All arithmetic is
exact; a fixed seed makes every run identical.
"""

from __future__ import annotations

from functools import lru_cache

from mfatlas.corpus import (
    sl2_nilpotent,
    sl2_semisimple,
    sl3_mixed,
    sl3_nilpotent,
    sl3_semisimple,
)
from mfatlas.flags import _inverse, enumerate_atlas
from mfatlas.lie import centralizer, sl
from mfatlas.linalg import ExactMatrix, solve, span_le
from mfatlas.mfsystem import (
    build_system,
    fibre_membership,
    fibre_membership_finite_lambda,
    invariant_values_along,
    is_strongly_regular,
    mf_values,
    tangent_space,
)
from mfatlas.sampling import (
    conjugate,
    random_borel_group_element,
    random_distinct_rationals,
    random_element,
    random_rational,
    random_traceless_distinct_diag,
    random_unimodular,
    rng_for,
)
from mfatlas.scalar import Scalar

REP_KEYS = ("sl2-s", "sl2-n", "sl3-s", "sl3-r", "sl3-n")


@lru_cache(maxsize=None)
def representative(key: str):
    return {
        "sl2-s": lambda: sl2_semisimple(1),
        "sl2-n": sl2_nilpotent,
        "sl3-s": lambda: sl3_semisimple(1, 2),
        "sl3-r": lambda: sl3_mixed(1),
        "sl3-n": sl3_nilpotent,
    }[key]()


@lru_cache(maxsize=None)
def system_for(key: str):
    return build_system(representative(key))


@lru_cache(maxsize=None)
def atlas_for(key: str):
    return enumerate_atlas(representative(key))


def _round_robin(instances: int):
    for k in range(instances):
        yield REP_KEYS[k % len(REP_KEYS)]


def suite_reconstruction(instances: int = 100, seed: int = 0) -> int:
    """f_i(x + lam a) = sum_j f_ij(x) lam^j + f_i(a) lam^{d_i}."""
    checked = 0
    for key in _round_robin(instances):
        sys_ = system_for(key)
        L = sys_.algebra
        rng = rng_for(f"prop-reconstruction:{key}:{checked}", seed)
        x = random_element(L, rng)
        lam = Scalar(random_rational(rng))
        fa = invariant_values_along(sys_.a, L.zero(), Scalar(1))
        lhs = invariant_values_along(sys_.a, x, lam)
        vals = sys_.evaluate(x)
        r = L.rank
        for i in range(r):
            d = sys_.degrees[i]
            idx = r + sum(sys_.degrees[k] - 1 for k in range(i))
            acc = vals[i]
            pw = Scalar(1)
            for j in range(1, d):
                pw = pw * lam
                acc = acc + vals[idx + j - 1] * pw
            acc = acc + fa[i] * pw * lam
            assert acc == lhs[i], f"reconstruction failed for {key}, generator {i + 1}"
        checked += 1
    return checked


def suite_homogeneity(instances: int = 100, seed: int = 0) -> int:
    """f_ij(t x) = t^{d_i - j} f_ij(x); degrees also certified symbolically."""
    for key in REP_KEYS:
        sys_ = system_for(key)
        for (i, j), comp in zip(sys_.labels, sys_.components):
            assert comp.homogeneous_degree() == sys_.degrees[i - 1] - j, (
                f"non-homogeneous component {(i, j)} for {key}"
            )
    checked = 0
    for key in _round_robin(instances):
        sys_ = system_for(key)
        L = sys_.algebra
        rng = rng_for(f"prop-homogeneity:{key}:{checked}", seed)
        x = random_element(L, rng)
        t = Scalar(random_rational(rng))
        vx = sys_.evaluate(x)
        vt = sys_.evaluate(x.scale(t))
        for (i, j), v, w in zip(sys_.labels, vx, vt):
            assert w == v * t ** (sys_.degrees[i - 1] - j), (
                f"scaling failed for {key}, component {(i, j)}"
            )
        checked += 1
    return checked


def suite_equivariance(instances: int = 100, seed: int = 0) -> int:
    """F_a(g x g^-1) = F_{g^-1 a g}(x) for unimodular rational g."""
    checked = 0
    for key in _round_robin(instances):
        a = representative(key)
        L = a.algebra
        rng = rng_for(f"prop-equivariance:{key}:{checked}", seed)
        g = random_unimodular(L, rng)
        x = random_element(L, rng)
        a2 = conjugate(_inverse(g), a)
        assert mf_values(a, conjugate(g, x)) == mf_values(a2, x), (
            f"equivariance failed for {key}"
        )
        checked += 1
    return checked


def suite_borel_invariance(instances: int = 100, seed: int = 0) -> int:
    """For a and x in a common Borel, F_a is constant on the conjugation
    orbit of x under the Borel subgroup (adapted-basis upper-triangular
    rational matrices)."""
    checked = 0
    for key in _round_robin(instances):
        sys_ = system_for(key)
        L = sys_.algebra
        atlas = atlas_for(key)
        rng = rng_for(f"prop-borel:{key}:{checked}", seed)
        B = atlas.borels[checked % len(atlas.borels)]
        x = L.zero()
        for e in B.p_basis:
            x = x + e.scale(Scalar(random_rational(rng)))
        g = B.U * random_borel_group_element(L, rng) * B.U_inv
        y = conjugate(g, x)
        assert B.contains(y), f"conjugate left the Borel for {key}"
        assert sys_.evaluate(y) == sys_.evaluate(x), f"B-invariance failed for {key}"
        checked += 1
    return checked


def suite_vandermonde(instances: int = 100, seed: int = 0) -> int:
    """The alternative generators at pairwise-distinct lambdas recover the
    expansion coefficients by inverting a Vandermonde system."""
    checked = 0
    for key in _round_robin(instances):
        sys_ = system_for(key)
        L = sys_.algebra
        a = sys_.a
        rng = rng_for(f"prop-vandermonde:{key}:{checked}", seed)
        x = random_element(L, rng)
        vals = sys_.evaluate(x)
        fa = invariant_values_along(a, L.zero(), Scalar(1))
        r = L.rank
        for i in range(r):
            d = sys_.degrees[i]
            idx = r + sum(sys_.degrees[k] - 1 for k in range(i))
            coeffs = [vals[i]] + [vals[idx + j - 1] for j in range(1, d)]
            lams = [Scalar(v) for v in random_distinct_rationals(rng, d)]
            V = ExactMatrix([[lam**k for k in range(d)] for lam in lams])
            g = [
                invariant_values_along(a, x, lam)[i] - fa[i] * lam**d
                for lam in lams
            ]
            sol = solve(V, g)
            assert sol is not None and list(sol) == coeffs, (
                f"Vandermonde inversion failed for {key}, generator {i + 1}"
            )
        checked += 1
    return checked


def suite_finite_lambda(instances: int = 100, seed: int = 0) -> int:
    """Fibre membership from the components agrees with the finite-lambda
    invariant-value criterion, on random pairs and engineered fibre pairs."""
    checked = 0
    for key in _round_robin(instances):
        sys_ = system_for(key)
        L = sys_.algebra
        rng = rng_for(f"prop-membership:{key}:{checked}", seed)
        if checked % 3 == 2:
            # same-fibre pair: regular semisimple x in a Borel, y in x + [b, b]
            B = atlas_for(key).borels[0]
            x = conjugate(B.U, random_traceless_distinct_diag(L, rng))
            y = x
            for e in B.u_basis:
                y = y + e.scale(Scalar(random_rational(rng)))
            assert fibre_membership(sys_, x, y), f"fibre pair rejected for {key}"
            assert fibre_membership_finite_lambda(sys_, x, y), (
                f"finite-lambda criterion rejected a fibre pair for {key}"
            )
        else:
            x = random_element(L, rng)
            y = random_element(L, rng)
            assert fibre_membership(sys_, x, y) == fibre_membership_finite_lambda(
                sys_, x, y
            ), f"membership criteria disagree for {key}"
        checked += 1
    return checked


def suite_tangent_triple(instances: int = 100, seed: int = 0) -> int:
    """tangent_space cross-checks its three computation routes internally;
    at strongly regular points the dimension is b - r."""
    checked = 0
    k = 0
    while checked < instances:
        key = REP_KEYS[k % len(REP_KEYS)]
        k += 1
        sys_ = system_for(key)
        L = sys_.algebra
        rng = rng_for(f"prop-tangent:{key}:{k}", seed)
        x = random_element(L, rng)
        if not is_strongly_regular(sys_, x):
            continue
        span = tangent_space(sys_, x)
        assert len(span) == sys_.b - L.rank, f"tangent dimension off for {key}"
        checked += 1
    return checked


def suite_containment(instances: int = 100, seed: int = 0) -> int:
    """The centralizer of a regular element lies in every Borel and
    parabolic of its atlas, and in b^a."""
    checked = 0
    while checked < instances:
        n = 2 if checked % 5 < 3 else 3
        L = sl(n)
        rng = rng_for(f"prop-containment:{n}:{checked}", seed)
        kind = checked % 3
        if kind == 0:
            base = random_traceless_distinct_diag(L, rng)
        elif kind == 1:
            base = representative("sl2-n" if n == 2 else "sl3-n")
        else:
            base = representative("sl2-s" if n == 2 else "sl3-r")
        a = conjugate(random_unimodular(L, rng), base)
        atlas = enumerate_atlas(a, verify=False)
        cent = [e.coords for e in centralizer(a)]
        assert span_le(cent, [e.coords for e in atlas.b_a]), (
            f"centralizer escapes b^a (n={n})"
        )
        for m in atlas.members:
            assert span_le(cent, m.p_span), f"centralizer escapes a member (n={n})"
        checked += 1
    return checked


ALL_SUITES = {
    "reconstruction": suite_reconstruction,
    "homogeneity": suite_homogeneity,
    "equivariance": suite_equivariance,
    "borel-invariance": suite_borel_invariance,
    "vandermonde": suite_vandermonde,
    "finite-lambda-membership": suite_finite_lambda,
    "tangent-triple": suite_tangent_triple,
    "containment": suite_containment,
}


@lru_cache(maxsize=None)
def run_suite_cached(name: str, instances: int = 100, seed: int = 0) -> int:
    """Run one named suite once per (name, instances, seed); both the
    property tests and the acceptance gate share the result."""
    return ALL_SUITES[name](instances=instances, seed=seed)
