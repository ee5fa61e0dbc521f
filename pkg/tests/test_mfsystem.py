"""Shift systems: construction, evaluation paths, Poisson structure,
membership criteria, strong regularity, tangent spaces, sections."""

from fractions import Fraction
from itertools import combinations

import pytest

from mfatlas.corpus import (
    sl2_nilpotent,
    sl2_semisimple,
    sl3_mixed,
    sl3_nilpotent,
    sl3_semisimple,
)
from mfatlas.errors import PreconditionError, RegularityError
from mfatlas.lie import sl
from mfatlas.linalg import ExactMatrix, mat_rank
from mfatlas.mfsystem import (
    alt_generators,
    build_system,
    fibre_membership,
    fibre_membership_finite_lambda,
    invariant_generators,
    invariant_values_along,
    is_strongly_regular,
    krylov_line_regular,
    mf_values,
    poisson_bracket,
    shift_expand,
    tangent_space,
    tarasov_check,
)
from mfatlas.sampling import random_element, rng_for
from mfatlas.scalar import Scalar

REPS = {
    "sl2-s": sl2_semisimple(1),
    "sl2-n": sl2_nilpotent(),
    "sl3-s": sl3_semisimple(1, 2),
    "sl3-r": sl3_mixed(1),
    "sl3-n": sl3_nilpotent(),
}
SYSTEMS = {k: build_system(a) for k, a in REPS.items()}


def test_shapes_and_labels():
    s2 = SYSTEMS["sl2-s"]
    assert s2.b == 2 and s2.degrees == [2]
    assert s2.labels == [(1, 0), (1, 1)]
    s3 = SYSTEMS["sl3-n"]
    assert s3.b == 5 and s3.degrees == [2, 3]
    assert s3.labels == [(1, 0), (2, 0), (1, 1), (2, 1), (2, 2)]


def test_invariant_generators_are_trace_powers():
    L = sl(3)
    gens = invariant_generators(L)
    assert len(gens) == 2
    rng = rng_for("sys-gens", 0)
    for _ in range(10):
        x = random_element(L, rng)
        m2 = x.matrix * x.matrix
        point = dict(zip(L.coord_names, x.coords))
        assert gens[0].eval(point) == m2.trace()
        assert gens[1].eval(point) == (m2 * x.matrix).trace()


def test_shift_expand_matches_along_line():
    L = sl(3)
    a = REPS["sl3-s"]
    f = invariant_generators(L)[1]
    coeffs = shift_expand(f, 3, a)
    assert len(coeffs) == 3
    rng = rng_for("sys-expand", 0)
    for _ in range(10):
        x = random_element(L, rng)
        lam = Scalar(Fraction(3, 2))
        point = dict(zip(L.coord_names, x.coords))
        fa = invariant_values_along(a, L.zero(), Scalar(1))[1]
        total = fa * lam**3
        pw = Scalar(1)
        for c in coeffs:
            total = total + c.eval(point) * pw
            pw = pw * lam
        assert total == invariant_values_along(a, x, lam)[1]


def test_build_rejects_non_regular():
    L = sl(3)
    bad = L.element(ExactMatrix.diagonal([Scalar(1), Scalar(1), Scalar(-2)]))
    with pytest.raises(RegularityError):
        build_system(bad)


def test_two_evaluation_paths_agree():
    rng = rng_for("sys-eval", 0)
    for key, sys_ in SYSTEMS.items():
        for _ in range(15):
            x = random_element(sys_.algebra, rng)
            assert sys_.evaluate(x) == sys_.evaluate_symbolic(x), key


def test_printed_sl2_system():
    assert [str(c) for c in SYSTEMS["sl2-s"].scaled_components()] == [
        "x12*x21 + h1^2",
        "2*h1",
    ]
    assert [str(c) for c in SYSTEMS["sl2-n"].scaled_components()] == [
        "x12*x21 + h1^2",
        "x21",
    ]


def test_poisson_brackets_vanish_on_system():
    sys_ = SYSTEMS["sl3-r"]
    for f, g in combinations(sys_.components, 2):
        assert poisson_bracket(f, g, sys_.algebra).is_zero()


def test_poisson_bracket_nonzero_outside_system():
    L = sl(2)
    x12 = L.coord_names[0]
    from mfatlas.mpoly import MPoly

    f = MPoly.var(L.coord_names, "x12")
    g = MPoly.var(L.coord_names, "x21")
    br = poisson_bracket(f, g, L)
    assert not br.is_zero()


def test_certificate_point_has_full_rank():
    for key, sys_ in SYSTEMS.items():
        assert mat_rank(sys_.jacobian_at(sys_.certificate_point)) == sys_.b, key


def test_alt_generators_default_and_bad_tables():
    sys_ = SYSTEMS["sl3-s"]
    rows = alt_generators(sys_)
    assert [len(r) for r in rows] == [2, 3]
    with pytest.raises(PreconditionError):
        alt_generators(sys_, [[Scalar(0), Scalar(0)], [Scalar(0), Scalar(1), Scalar(2)]])
    with pytest.raises(PreconditionError):
        alt_generators(sys_, [[Scalar(0), Scalar(1)]])


def test_membership_reflexive_and_shift_translates():
    rng = rng_for("sys-member", 0)
    for key, sys_ in SYSTEMS.items():
        x = random_element(sys_.algebra, rng)
        assert fibre_membership(sys_, x, x)
        assert fibre_membership_finite_lambda(sys_, x, x)


def test_mf_values_matches_system_order():
    rng = rng_for("sys-order", 0)
    for key, sys_ in SYSTEMS.items():
        x = random_element(sys_.algebra, rng)
        assert mf_values(sys_.a, x) == sys_.evaluate(x), key


def test_krylov_line_certificate():
    a = REPS["sl3-s"]
    # the zero point: x + lambda a = lambda a is singular at lambda = 0
    assert not krylov_line_regular(a.algebra.zero(), a)
    # a regular nilpotent stays regular along the whole line for nilpotent a
    rng = rng_for("sys-krylov", 0)
    sys_ = SYSTEMS["sl3-s"]
    hits = 0
    for _ in range(10):
        x = random_element(sys_.algebra, rng)
        if krylov_line_regular(x, sys_.a):
            hits += 1
            assert is_strongly_regular(sys_, x, certify=True)
    assert hits > 0


def test_strong_regularity_origin_fails():
    for key, sys_ in SYSTEMS.items():
        assert not is_strongly_regular(sys_, sys_.algebra.zero()), key


def test_tangent_space_dimension():
    sys_ = SYSTEMS["sl3-r"]
    rng = rng_for("sys-tangent", 0)
    found = 0
    while found < 3:
        x = random_element(sys_.algebra, rng)
        if is_strongly_regular(sys_, x):
            assert len(tangent_space(sys_, x)) == 3
            found += 1
    with pytest.raises(RegularityError):
        tangent_space(sys_, sys_.algebra.zero())


def test_tarasov_reports():
    rep2 = tarasov_check(REPS["sl2-s"], sample_count=10, seed=0)
    assert rep2.passed and rep2.section_dim == 2
    rep3 = tarasov_check(sl3_semisimple(1, 2), sample_count=10, seed=0)
    assert rep3.passed and rep3.section_dim == 5
    assert rep3.strong_regular_checked == 10
    with pytest.raises(PreconditionError):
        tarasov_check(REPS["sl3-r"], sample_count=5, seed=0)
    with pytest.raises(PreconditionError):
        tarasov_check(sl3_nilpotent(), sample_count=5, seed=0)
