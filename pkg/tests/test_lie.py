"""sl_n structure: brackets, forms, centralizers, regularity, Jordan
decomposition, Weyl action."""

from fractions import Fraction

import pytest

from mfatlas.errors import PreconditionError
from mfatlas.lie import (
    GElement,
    ad_matrix,
    apply_weyl,
    bracket,
    centralizer,
    invariant_form,
    is_regular,
    is_regular_nonderogatory,
    jordan_chevalley,
    killing_form,
    sl,
    weyl_group,
    weyl_stabilizer,
)
from mfatlas.linalg import ExactMatrix
from mfatlas.sampling import random_element, rng_for
from mfatlas.scalar import Scalar


def _el(L, rows):
    return L.element(ExactMatrix([[Scalar(Fraction(v)) for v in row] for row in rows]))


def test_coordinates_round_trip():
    L = sl(3)
    rng = rng_for("lie-coords", 0)
    for _ in range(20):
        x = random_element(L, rng)
        assert L.element_from_coords(x.coords) == x
    assert L.coord_names[:2] == ("x12", "x13")
    assert L.coord_names[-2:] == ("h1", "h2")


def test_traceless_enforced():
    L = sl(2)
    with pytest.raises(PreconditionError):
        _el(L, [[1, 0], [0, 1]])


def test_bracket_antisymmetry_and_jacobi():
    L = sl(3)
    rng = rng_for("lie-jacobi", 0)
    for _ in range(25):
        x, y, z = (random_element(L, rng) for _ in range(3))
        assert bracket(x, y) == -bracket(y, x)
        jac = (
            bracket(x, bracket(y, z))
            + bracket(y, bracket(z, x))
            + bracket(z, bracket(x, y))
        )
        assert jac.is_zero()


def test_invariant_form_associativity():
    L = sl(3)
    rng = rng_for("lie-form", 0)
    for _ in range(25):
        x, y, z = (random_element(L, rng) for _ in range(3))
        assert invariant_form(bracket(x, y), z) == invariant_form(x, bracket(y, z))


def test_killing_form_is_2n_trace_form():
    L = sl(3)
    rng = rng_for("lie-killing", 0)
    for _ in range(10):
        x = random_element(L, rng)
        y = random_element(L, rng)
        assert killing_form(x, y) == Scalar(6) * invariant_form(x, y)


def test_ad_matrix_realizes_bracket():
    L = sl(3)
    rng = rng_for("lie-ad", 0)
    for _ in range(10):
        x = random_element(L, rng)
        y = random_element(L, rng)
        assert L.element_from_coords(ad_matrix(x).apply(y.coords)) == bracket(x, y)


def test_centralizer_dimensions():
    L = sl(3)
    s = _el(L, [[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    n = _el(L, [[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    sub = _el(L, [[1, 0, 0], [0, 1, 0], [0, 0, -2]])
    assert len(centralizer(s)) == 2
    assert len(centralizer(n)) == 2
    assert len(centralizer(sub)) == 4
    for c in centralizer(s):
        assert bracket(c, s).is_zero()


def test_regularity():
    L = sl(3)
    assert is_regular(_el(L, [[1, 0, 0], [0, 2, 0], [0, 0, -3]]))
    assert is_regular(_el(L, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]))
    assert is_regular(_el(L, [[1, 1, 0], [0, 1, 0], [0, 0, -2]]))
    assert not is_regular(_el(L, [[1, 0, 0], [0, 1, 0], [0, 0, -2]]))
    assert not is_regular(L.zero())
    # regular iff nonderogatory for sl_n
    rng = rng_for("lie-reg", 0)
    for _ in range(15):
        x = random_element(L, rng)
        assert is_regular(x) == is_regular_nonderogatory(x)


def test_jordan_chevalley_exact():
    L = sl(3)
    rng = rng_for("lie-jc", 0)
    cases = [
        _el(L, [[1, 1, 0], [0, 1, 0], [0, 0, -2]]),
        _el(L, [[0, 1, 0], [0, 0, 1], [0, 0, 0]]),
        _el(L, [[2, 7, -1], [0, 2, 3], [0, 0, -4]]),
    ]
    for x in cases:
        jd = jordan_chevalley(x)
        assert jd.s + jd.nil == x
        assert bracket(jd.s, jd.nil).is_zero()
        assert jd.nil.is_nilpotent()
        assert not jd.s.is_nilpotent() or jd.s.is_zero()
        # semisimple part: decomposing again must be idempotent
        jd2 = jordan_chevalley(jd.s)
        assert jd2.nil.is_zero()


def test_weyl_group_order_and_action():
    assert len(weyl_group(2)) == 2
    assert len(weyl_group(3)) == 6
    L = sl(3)
    s = _el(L, [[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    orbit = {apply_weyl(w, s) for w in weyl_group(3)}
    assert len(orbit) == 6
    sub = _el(L, [[2, 0, 0], [0, 2, 0], [0, 0, -4]])
    assert len(weyl_stabilizer(sub)) == 2
    assert len(weyl_stabilizer(s)) == 1


def test_json_round_trip():
    L = sl(3)
    rng = rng_for("lie-json", 0)
    for _ in range(5):
        x = random_element(L, rng)
        assert GElement.from_json_dict(x.to_json_dict()) == x
        assert GElement.from_json(x.to_json()) == x
