"""Affine fibre components: Borel components, Weyl translates, parabolic
lifts, zero-fibre counting, exotic witnesses, image and singular probes."""

from fractions import Fraction

import pytest

from mfatlas.components import (
    AffineComponent,
    IPrimeEntry,
    IPrimeTable,
    borel_component,
    certify_affine_constant,
    count_zero_fibre,
    critical_value_probe,
    eigen_partition,
    exotic_witness_check,
    image_bba_check,
    levi_system,
    member_label,
    near_section_probe,
    parabolic_lift,
    singular_family_check,
    tarasov_exotic_probe,
    weyl_components,
)
from mfatlas.corpus import (
    lowering_zero_fibre_witness,
    mixed_zero_fibre_witness,
    sl2_nilpotent,
    sl2_semisimple,
    sl3_mixed,
    sl3_nilpotent,
    sl3_semisimple,
    semisimple_zero_fibre_witness,
)
from mfatlas.errors import CertificationError, MembershipError, NotNilpotentError
from mfatlas.flags import enumerate_atlas, levi_projection
from mfatlas.lie import sl
from mfatlas.linalg import ExactMatrix
from mfatlas.mfsystem import build_system
from mfatlas.scalar import Scalar

A_N3 = sl3_nilpotent()
SYS_N3 = build_system(A_N3)
ATLAS_N3 = enumerate_atlas(A_N3)
A_S3 = sl3_semisimple(1, 2)
SYS_S3 = build_system(A_S3)
ATLAS_S3 = enumerate_atlas(A_S3)


def _el(L, rows):
    return L.element(ExactMatrix([[Scalar(Fraction(v)) for v in row] for row in rows]))


def test_certify_affine_constant_accepts_true_family():
    B = ATLAS_N3.borels[0]
    x = A_N3
    comp_val = certify_affine_constant(SYS_N3, x, B.u_basis)
    assert comp_val == SYS_N3.evaluate(x)


def test_certify_affine_constant_rejects_false_family():
    with pytest.raises(CertificationError):
        certify_affine_constant(SYS_S3, A_S3, [A_S3])


def test_borel_component_dimension_and_membership():
    L = sl(3)
    B = ATLAS_S3.borels[0]
    x = _el(L, [[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    if not B.contains(x):
        x = A_S3
    comp = borel_component(SYS_S3, x, B)
    assert comp.dim == SYS_S3.b - L.rank == 3
    assert comp.contains(comp.base)
    y = comp.base
    for d in comp.dirs:
        y = y + d.scale(Scalar(2))
    assert comp.contains(y)
    assert SYS_S3.evaluate(y) == comp.value


def test_borel_component_requires_membership():
    L = sl(3)
    outside = _el(L, [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
    with pytest.raises(MembershipError):
        borel_component(SYS_N3, outside, ATLAS_N3.borels[0])


def test_weyl_components_counts():
    L = sl(3)
    x = _el(L, [[1, 0, 0], [0, 2, 0], [0, 0, -3]])
    comps = weyl_components(SYS_N3, x, ATLAS_N3)
    assert len(comps) == 6
    vals = {tuple(c.value) for c in comps}
    assert len(vals) == 1
    # nilpotent x has vanishing diagonal part: single component
    comps0 = weyl_components(SYS_N3, A_N3, ATLAS_N3)
    assert len(comps0) == 1
    with pytest.raises(NotNilpotentError):
        weyl_components(SYS_S3, x, ATLAS_S3)


def test_weyl_components_all_contained_in_unique_borel():
    L = sl(3)
    x = _el(L, [[2, 0, 0], [0, -1, 0], [0, 0, -1]])
    B = ATLAS_N3.borels[0]
    for comp in weyl_components(SYS_N3, x, ATLAS_N3):
        assert B.contains(comp.base)


def test_levi_system_and_parabolic_lift():
    p = next(m for m in ATLAS_N3.parabolics if m.blocks == (2, 1))
    svars, polys = levi_system(p, A_N3)
    assert len(svars) == p.dim_p - p.dim_u
    al = levi_projection(p, A_N3)
    y = AffineComponent(
        base=al,
        dirs=[],
        value=(),
        label="levi-point",
    )
    # lift a genuine Levi component: base point al, directions inside the
    # sl_2 factor nilradical
    lifted = parabolic_lift(SYS_N3, p, _levi_u_component(p, al))
    assert lifted.dim == SYS_N3.b - 2
    assert lifted.contains(al)


def _levi_u_component(p, al):
    """Component of the Levi zero fibre used by the lift test: al + the
    sl_2-factor raising direction (adapted basis)."""
    L = p.algebra
    raise_dir = L.element(p.U * ExactMatrix(
        [[Scalar(0), Scalar(1), Scalar(0)],
         [Scalar(0), Scalar(0), Scalar(0)],
         [Scalar(0), Scalar(0), Scalar(0)]]
    ) * p.U_inv)
    return AffineComponent(base=al, dirs=[raise_dir], value=(), label="levi")


def test_eigen_partition():
    assert eigen_partition(A_S3) == (1, 1, 1)
    assert eigen_partition(sl3_mixed(1)) == (2, 1)
    assert eigen_partition(A_N3) == (3,)
    assert eigen_partition(sl2_semisimple(1)) == (1, 1)
    assert eigen_partition(sl2_nilpotent()) == (2,)


def test_iprime_table_defaults_and_io(tmp_path):
    t = IPrimeTable.default()
    assert t.get(2, (1, 1)).value == 0
    assert t.get(3, (1, 1, 1)).value is None
    assert t.get(3, (1, 1, 1)).lower == 1
    d = t.to_json_dict()
    assert d["schema"] == "mf-iprime/1"
    t2 = IPrimeTable.from_json_dict(d)
    assert t2.entries == t.entries
    path = tmp_path / "table.json"
    import json

    path.write_text(json.dumps(d))
    t3 = IPrimeTable.load(str(path))
    assert t3.entries == t.entries
    assert IPrimeTable.symbol(3, (2, 1)) == "I'(3,[2,1])"


def test_count_zero_fibre_sl2_exact():
    rep_s = count_zero_fibre(sl2_semisimple(1))
    assert rep_s.total == 2 and rep_s.total_lower == 2
    assert rep_s.borel_count == 2 and rep_s.self_value == 0
    rep_n = count_zero_fibre(sl2_nilpotent())
    assert rep_n.total == 1 and rep_n.total_lower == 1


def test_count_zero_fibre_sl3_structural():
    rep = count_zero_fibre(A_S3)
    assert rep.total is None
    assert rep.total_lower == 7
    assert rep.borel_count == 6
    assert rep.formula == "I'(3,[1,1,1]) + 0 + 6"
    rep_r = count_zero_fibre(sl3_mixed(1))
    assert rep_r.formula == "I'(3,[2,1]) + 0 + 3" and rep_r.total_lower == 4
    rep_n = count_zero_fibre(A_N3)
    assert rep_n.formula == "I'(3,[3]) + 0 + 1" and rep_n.total_lower == 2


def test_count_with_resolved_table():
    t = IPrimeTable.default()
    t.entries[(3, (1, 1, 1))] = IPrimeEntry(9, 9)
    rep = count_zero_fibre(A_S3, table=t)
    assert rep.total == 15 and rep.total_lower == 15


def test_exotic_witnesses_verified():
    s, xs = semisimple_zero_fibre_witness(2, 2, 4)
    sys_s = build_system(s)
    rep = exotic_witness_check(sys_s, xs)
    assert rep.passed and rep.value_matches
    assert not any(inside for _, inside in rep.memberships)

    xr = mixed_zero_fibre_witness(1)
    rep_r = exotic_witness_check(build_system(sl3_mixed(1)), xr)
    assert rep_r.passed

    xn = lowering_zero_fibre_witness()
    rep_n = exotic_witness_check(SYS_N3, xn, atlas=ATLAS_N3)
    assert rep_n.passed


def test_exotic_witness_rejects_atlas_members():
    # a point inside a Borel is not an exotic witness
    rep = exotic_witness_check(SYS_N3, A_N3, target=SYS_N3.evaluate(A_N3), atlas=ATLAS_N3)
    assert not rep.passed


def test_tarasov_exotic_probe():
    rep = tarasov_exotic_probe(SYS_S3, ATLAS_S3, samples=15, seed=0)
    assert rep.passed
    assert rep.samples_outside >= 1
    assert all(rep.per_member_witnessed.values())


def test_singular_family_two_borels():
    x = sl(3).zero()
    for e in ATLAS_S3.b_a:
        x = x + e.scale(Scalar(3))
    rep = singular_family_check(SYS_S3, x, ATLAS_S3)
    assert rep.passed and not rep.expected_failure
    rep_n = singular_family_check(SYS_N3, A_N3, ATLAS_N3)
    assert rep_n.passed and rep_n.expected_failure


def test_image_bba_reports():
    rep_s = image_bba_check(SYS_S3, ATLAS_S3, samples=8, seed=0)
    assert rep_s.passed and rep_s.expected_degree == 6 and rep_s.nilpotent_form is None
    rep_n = image_bba_check(SYS_N3, ATLAS_N3, samples=8, seed=0)
    assert rep_n.passed and rep_n.expected_degree == 1 and rep_n.nilpotent_form is True


def test_critical_value_probe():
    rep = critical_value_probe(SYS_S3, samples=10, seed=0)
    assert rep.passed and rep.max_rank < SYS_S3.b
    sys2 = build_system(sl2_semisimple(1))
    rep2 = critical_value_probe(sys2, samples=10, seed=0)
    assert rep2.passed and rep2.closed_form_ok is True


def test_near_section_probe():
    rep = near_section_probe(SYS_N3, ATLAS_N3, samples=5, seed=0)
    assert rep.all_values_equal and rep.in_opposite_borel
    assert rep.translates == 6


def test_member_label_format():
    lbl = member_label(ATLAS_N3.borels[0])
    assert lbl.startswith("borel:1-1-1:")
    p = ATLAS_N3.parabolics[0]
    assert member_label(p).startswith("parabolic:")
