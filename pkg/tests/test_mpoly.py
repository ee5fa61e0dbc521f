"""Multivariate polynomial arithmetic, substitution, and calculus."""

from fractions import Fraction

import pytest

from mfatlas.mpoly import MPoly, mpoly_det, mpoly_mat_mul, mpoly_mat_trace
from mfatlas.scalar import Scalar

V = ("x", "y", "z")


def _x():
    return MPoly.var(V, "x")


def _y():
    return MPoly.var(V, "y")


def _z():
    return MPoly.var(V, "z")


def test_ring_axioms_on_samples():
    p = _x() * _y() + _z() * 2
    q = _x() - _y() * _y()
    r = MPoly.const(V, Scalar(Fraction(1, 3)))
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert p - p == MPoly.zero(V)
    assert (p * q) * r == p * (q * r)


def test_eval_and_subs_agree():
    p = _x() ** 2 * _y() - _z() ** 3 + MPoly.const(V, Scalar(4))
    point = {"x": Scalar(2), "y": Scalar(-1), "z": Scalar(1)}
    assert p.eval(point) == Scalar(-1)
    mapping = {
        "x": MPoly.const(V, Scalar(2)),
        "y": MPoly.const(V, Scalar(-1)),
        "z": MPoly.const(V, Scalar(1)),
    }
    q = p.subs(V, mapping)
    assert q.is_constant() and q.constant_term() == Scalar(-1)


def test_subs_composition():
    p = _x() * _x() + _y()
    mapping = {"x": _y() + _z(), "y": _z() * _z(), "z": _z()}
    q = p.subs(V, mapping)
    assert q == (_y() + _z()) * (_y() + _z()) + _z() * _z()


def test_diff_product_rule():
    p = _x() ** 2 * _y()
    q = _y() * _z() + _x()
    lhs = (p * q).diff("x")
    rhs = p.diff("x") * q + p * q.diff("x")
    assert lhs == rhs
    assert MPoly.const(V, Scalar(7)).diff("y").is_zero()


def test_homogeneous_degree():
    assert (_x() * _y() + _z() ** 2).homogeneous_degree() == 2
    assert (_x() + MPoly.const(V, Scalar(1))).homogeneous_degree() is None
    assert MPoly.zero(V).homogeneous_degree() is None


def test_project_and_collect():
    p = _x() * _y() * 0 + _x() ** 2  # y-free after normalization
    q = p.project(("x",))
    assert q.vars == ("x",)
    with pytest.raises(ValueError):
        (_x() * _y()).project(("x",))


def test_coeff_of():
    p = _x() ** 2 * _y() + _x() * _z() + _y()
    cx2 = p.coeff_of("x", 2)
    assert cx2 == MPoly.var(V, "y")
    cx1 = p.coeff_of("x", 1)
    assert cx1 == _z()
    cx0 = p.coeff_of("x", 0)
    assert cx0 == _y()


def test_canonical_str_ordering():
    p = _y() + _x() ** 2 + MPoly.const(V, Scalar(Fraction(-1, 2)))
    assert str(p) == "x^2 + y - 1/2"
    assert str(MPoly.zero(V)) == "0"


def test_matrix_det_and_trace():
    a = [[_x(), _y()], [_z(), _x()]]
    assert mpoly_det(a) == _x() * _x() - _y() * _z()
    prod = mpoly_mat_mul(a, a)
    assert mpoly_mat_trace(prod) == (_x() * _x() + _y() * _z()) * 2
    # alternating: swapping two rows flips the sign
    b = [[_z(), _x()], [_x(), _y()]]
    assert mpoly_det([a[1], a[0]]) == MPoly.zero(V) - mpoly_det(a)
    assert mpoly_det(b) == _z() * _y() - _x() * _x()


def test_det_3x3_frozen():
    rows = [
        [_x(), _y(), _z()],
        [_y(), _z(), _x()],
        [_z(), _x(), _y()],
    ]
    det = mpoly_det(rows)
    x, y, z = _x(), _y(), _z()
    expect = x * z * y * 3 - (x * x * x + y * y * y + z * z * z)
    assert det == expect
