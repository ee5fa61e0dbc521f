"""Acceptance gate: ten pass/fail criteria covering the full verification
surface, one printed line each.

Run order matters only for the shared caches; every criterion is
self-contained and exact."""

import time
from itertools import combinations

from property_suites import ALL_SUITES, run_suite_cached

from mfatlas.components import (
    count_zero_fibre,
    image_bba_check,
    singular_family_check,
)
from mfatlas.corpus import (
    check_sl2_nilpotent_fibres,
    check_sl2_printed_system,
    check_sl2_semisimple_fibre_split,
    check_sl2_singular_images,
    check_sl2_zero_fibre,
    check_sl3_atlas_tables,
    check_sl3_bba_restrictions,
    check_sl3_exotic_mixed,
    check_sl3_exotic_nilpotent,
    check_sl3_exotic_semisimple,
    check_sl3_printed_system,
    sl2_nilpotent,
    sl2_semisimple,
    sl3_mixed,
    sl3_nilpotent,
    sl3_semisimple,
)
from mfatlas.flags import enumerate_atlas
from mfatlas.linalg import mat_rank
from mfatlas.mfsystem import build_system, poisson_bracket_grads, tarasov_check
from mfatlas.sampling import random_rational, rng_for
from mfatlas.scalar import Scalar

REPS = {
    "sl2-s": sl2_semisimple(1),
    "sl2-n": sl2_nilpotent(),
    "sl3-s": sl3_semisimple(1, 2),
    "sl3-r": sl3_mixed(1),
    "sl3-n": sl3_nilpotent(),
}
SYSTEMS = {k: build_system(a) for k, a in REPS.items()}
ATLASES = {k: enumerate_atlas(a) for k, a in REPS.items()}


def _criterion(num: int, slug: str, fn):
    try:
        detail = fn()
    except BaseException as exc:
        print(f"[criterion {num:02d}] {slug}: FAIL ({exc})", flush=True)
        raise
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {num:02d}] {slug}: PASS{suffix}", flush=True)


def _require(results):
    for r in results:
        assert r.passed, f"{r.name}: {r.detail}"
    return results


def test_criterion_01_poisson_commutativity():
    def run():
        t0 = time.time()
        pairs = 0
        for key, sys_ in SYSTEMS.items():
            grads = sys_.component_gradients()
            for Gf, Gg in combinations(grads, 2):
                assert poisson_bracket_grads(sys_.algebra, Gf, Gg).is_zero(), key
                pairs += 1
        elapsed = time.time() - t0
        assert elapsed < 30.0, f"{elapsed:.1f}s over budget"
        return f"{pairs} bracket pairs identically zero in {elapsed:.1f}s"

    _criterion(1, "poisson-commutativity", run)


def test_criterion_02_free_generation_certificate():
    def run():
        for key, sys_ in SYSTEMS.items():
            rank = mat_rank(sys_.jacobian_at(sys_.certificate_point))
            assert rank == sys_.b, f"{key}: rank {rank} != {sys_.b}"
        return "rank b certificates for all five shift elements"

    _criterion(2, "free-generation-certificate", run)


def test_criterion_03_sl2_closed_forms():
    def run():
        _require([
            check_sl2_printed_system(),
            check_sl2_zero_fibre(),
            check_sl2_semisimple_fibre_split(100, 0),
            check_sl2_singular_images(100, 0),
            check_sl2_nilpotent_fibres(100, 0),
        ])
        return "printed systems, case-split identities, 100-sample images"

    _criterion(3, "sl2-closed-forms", run)


def test_criterion_04_sl3_atlas_tables():
    def run():
        _require([check_sl3_printed_system(), check_sl3_atlas_tables(),
                  check_sl3_bba_restrictions()])
        counts = {
            key: (len(ATLASES[key].borels), len(ATLASES[key].parabolics))
            for key in ("sl3-s", "sl3-r", "sl3-n")
        }
        assert counts == {"sl3-s": (6, 6), "sl3-r": (3, 4), "sl3-n": (1, 2)}
        return "member counts (6,6)/(3,4)/(1,2) and printed shapes"

    _criterion(4, "sl3-atlas-tables", run)


def test_criterion_05_recursive_count():
    def run():
        rep = count_zero_fibre(REPS["sl2-s"])
        assert rep.total == 2
        rep = count_zero_fibre(REPS["sl2-n"])
        assert rep.total == 1
        rep_s = count_zero_fibre(REPS["sl3-s"], atlas=ATLASES["sl3-s"])
        assert rep_s.formula == "I'(3,[1,1,1]) + 0 + 6"
        assert rep_s.total_lower == 7
        rep_n = count_zero_fibre(REPS["sl3-n"], atlas=ATLASES["sl3-n"])
        assert rep_n.formula == "I'(3,[3]) + 0 + 1"
        assert rep_n.total_lower == 2
        return "totals 2/1 exact; structural bounds 7 and 2"

    _criterion(5, "recursive-count", run)


def test_criterion_06_exotic_witnesses():
    def run():
        _require([
            check_sl3_exotic_semisimple(),
            check_sl3_exotic_mixed(),
            check_sl3_exotic_nilpotent(),
        ])
        return "three witnesses: value zero, outside every member, x^2 != 0 = x^3"

    _criterion(6, "exotic-witnesses", run)


def test_criterion_07_image_of_bba():
    def run():
        degrees = {}
        for key, sys_ in SYSTEMS.items():
            samples = 50 if key.startswith("sl3") else 25
            rep = image_bba_check(sys_, ATLASES[key], samples=samples, seed=0)
            assert rep.passed, f"{key}: {rep.failures}"
            assert rep.t_free, key
            degrees[key] = rep.expected_degree
            if key == "sl3-n":
                assert rep.nilpotent_form is True
        assert degrees["sl3-r"] == 3
        assert degrees["sl3-s"] == 6
        assert degrees["sl3-n"] == 1
        return "t-free restrictions; degrees 6/3/1 on 50-point probes"

    _criterion(7, "image-of-bba", run)


def test_criterion_08_singular_family():
    def run():
        for key in ("sl2-s", "sl3-s", "sl3-r"):
            sys_ = SYSTEMS[key]
            atlas = ATLASES[key]
            L = sys_.algebra
            rng = rng_for(f"acceptance-singular:{key}", 0)
            for k in range(20):
                x = L.zero()
                for e in atlas.b_a:
                    x = x + e.scale(Scalar(random_rational(rng)))
                rep = singular_family_check(sys_, x, atlas)
                assert rep.passed and not rep.expected_failure, f"{key}[{k}]"
        for key in ("sl2-n", "sl3-n"):
            rep = singular_family_check(SYSTEMS[key], REPS[key], ATLASES[key])
            assert rep.passed and rep.expected_failure, key
        return "two-Borel certificates on 20 points each; nilpotent expected-failure"

    _criterion(8, "singular-family", run)


def test_criterion_09_tarasov_section():
    def run():
        rep2 = tarasov_check(REPS["sl2-s"], sample_count=50, seed=0)
        rep3 = tarasov_check(REPS["sl3-s"], sample_count=50, seed=0)
        for rep in (rep2, rep3):
            assert rep.passed, rep.failures
            assert rep.jacobian_constant not in ("0", "")
            assert rep.strong_regular_checked == 50
            assert rep.injectivity_pairs >= 100
        return (
            f"constants {rep2.jacobian_constant} and {rep3.jacobian_constant}; "
            f"50 strongly regular points; {rep2.injectivity_pairs}+"
            f"{rep3.injectivity_pairs} injectivity pairs"
        )

    _criterion(9, "tarasov-section", run)


def test_criterion_10_property_suites():
    def run():
        t0 = time.time()
        for name in sorted(ALL_SUITES):
            checked = run_suite_cached(name, 100, 0)
            assert checked >= 100, name
        elapsed = time.time() - t0
        assert elapsed < 300.0, f"{elapsed:.1f}s over budget"
        return f"8 suites x 100 exact instances in {elapsed:.1f}s"

    _criterion(10, "property-suites", run)
