"""Tests for global invariants and description validation."""

import pytest
from hypothesis import given, settings, strategies as st

from lefschetz_certify.base import (
    DimensionMismatch,
    EulerMismatch,
    InconsistentFlags,
    InvalidCounts,
    MatrixNotSymplectic,
    NegativeBetti,
    ParityMismatch,
)
from lefschetz_certify.constructions import (
    CurveKind,
    catalog_entry,
    elliptic_12,
    parallel_twist_fiber,
    random_fibration,
    trivial_bundle,
)
from lefschetz_certify.homology import MonodromyVerdict
from lefschetz_certify.invariants import (
    BettiRange,
    FibrationDescription,
    RuledParameters,
    b2_minus_lower_bound,
    betti_resolution,
    canonical_square,
    canonical_square_upper_bound,
    component_bounds_check,
    compute_invariants,
    euler_characteristic,
    first_betti_range,
    structural_betti_range,
    total_counts,
    validate_fibration,
)
from lefschetz_certify.surface_config import make_fiber
from lefschetz_certify.verdicts import Status


def genus2_loops(count, **kwargs):
    fibers = [make_fiber([(1, 2)], [(0, 0)]) for _ in range(count)]
    return FibrationDescription(fiber_genus=2, base_genus=0, fibers=fibers, **kwargs)


def statuses(verdicts):
    return {v.id: v.status for v in verdicts}


class TestEulerCharacteristic:
    def test_examples(self):
        assert euler_characteristic(0, 1, 12) == 12
        assert euler_characteristic(1, 3, 0) == 0
        assert euler_characteristic(0, 2, 20) == 16


class TestTotalCounts:
    def test_elliptic(self):
        assert tuple(total_counts(elliptic_12())) == (12, 12, 0, 12, 12)

    def test_separating_twists(self):
        fiber = parallel_twist_fiber(CurveKind.separating(1, 1), 5, 2)
        fd = FibrationDescription(fiber_genus=2, base_genus=0, fibers=[fiber])
        assert tuple(total_counts(fd)) == (5, 0, 5, 1, 6)

    def test_empty(self):
        assert tuple(total_counts(FibrationDescription(fiber_genus=2, base_genus=1))) == (0, 0, 0, 0, 0)

    def test_unvalidated_fibers_are_classified(self):
        fd = FibrationDescription(
            fiber_genus=2, base_genus=0, fibers=[make_fiber([(1, 1), (1, 1)], [(0, 1)])]
        )
        assert total_counts(fd).s == 1


class TestB2MinusLowerBound:
    def test_examples(self):
        assert b2_minus_lower_bound(12, 12) == 1
        assert b2_minus_lower_bound(6, 1) == 6
        assert b2_minus_lower_bound(0, 0) == 0

    def test_fewer_components_than_fibers(self):
        with pytest.raises(InvalidCounts):
            b2_minus_lower_bound(2, 3)


class TestComponentBounds:
    def test_elliptic(self):
        verdicts = component_bounds_check(12, 12, 0, 12, 12, 1, all_stable=False)
        assert statuses(verdicts)["EQ4"] is Status.HOLDS
        assert statuses(verdicts)["EQ5"] is Status.HOLDS
        assert statuses(verdicts)["REM7-K"] is Status.NOT_APPLICABLE

    def test_separating_twists(self):
        verdicts = {v.id: v for v in component_bounds_check(5, 0, 5, 1, 6, 2, all_stable=False)}
        assert verdicts["EQ4"].slack == 0
        assert verdicts["EQ5"].slack == 2

    def test_stable_bound_violated(self):
        verdicts = {v.id: v for v in component_bounds_check(7, 7, 0, 1, 2, 2, all_stable=True)}
        assert verdicts["REM7-K"].status is Status.VIOLATED
        assert verdicts["REM7-K"].slack == -4


class TestBettiResolution:
    def test_examples(self):
        assert betti_resolution(12, 0, -8) == (1, 9)
        assert betti_resolution(4, 0, 0) == (1, 1)

    def test_parity(self):
        with pytest.raises(ParityMismatch) as exc:
            betti_resolution(12, 0, -7)
        assert exc.value.path == "signature"

    def test_negative(self):
        with pytest.raises(NegativeBetti):
            betti_resolution(4, 0, 4)

    @settings(max_examples=500)
    @given(st.integers(0, 30), st.integers(0, 30), st.integers(0, 10))
    def test_canonical_square_identity(self, b2_plus, b2_minus, b1):
        chi = 2 - 2 * b1 + b2_plus + b2_minus
        sigma = b2_plus - b2_minus
        assert betti_resolution(chi, b1, sigma) == (b2_plus, b2_minus)
        assert canonical_square(chi, b1, b2_minus) == 2 * chi + 3 * sigma


class TestCanonicalSquare:
    def test_examples(self):
        assert canonical_square(12, 0, 9) == 0
        assert canonical_square(4, 4, 1) == 32
        assert canonical_square(0, 2, 1) == 0

    def test_upper_bound_elliptic(self):
        # b1 = 0 exactly and b2- >= 1
        assert canonical_square_upper_bound(elliptic_12()) == 48

    def test_upper_bound_genus2_pencil(self):
        assert canonical_square_upper_bound(genus2_loops(20)) == 86

    def test_upper_bound_needs_singular_fibers(self):
        with pytest.raises(InvalidCounts):
            canonical_square_upper_bound(trivial_bundle(1, 1))


class TestBettiRange:
    def test_positive_genus(self):
        fd = FibrationDescription(fiber_genus=2, base_genus=3, fibers=[make_fiber([(1, 2)], [(0, 0)])])
        assert structural_betti_range(fd) == BettiRange(6, 10)

    def test_pencil_with_nonseparating_cycles(self):
        assert structural_betti_range(genus2_loops(3)) == BettiRange(0, 3)

    def test_pencil_with_only_separating_cycles(self):
        fiber = parallel_twist_fiber(CurveKind.separating(1, 1), 2, 2)
        fd = FibrationDescription(fiber_genus=2, base_genus=0, fibers=[fiber])
        assert structural_betti_range(fd) == BettiRange(0, 4)

    def test_exact_from_homology(self):
        b1 = first_betti_range(elliptic_12())
        assert b1.exact
        assert b1.value == 0


class TestValidateFibration:
    def test_fiber_error_is_located(self):
        bad = make_fiber([(0, 1), (1, 1)], [(0, 1)])
        fd = FibrationDescription(
            fiber_genus=2, base_genus=0, fibers=[make_fiber([(1, 2)], [(0, 0)]), bad]
        )
        with pytest.raises(EulerMismatch) as exc:
            validate_fibration(fd)
        assert exc.value.fiber_index == 1
        assert exc.value.path == "fibers/1"

    def test_exclusive_flags(self):
        fd = genus2_loops(3, asserts_not_rational_or_ruled=True, ruled_params=RuledParameters(0, 1))
        with pytest.raises(InconsistentFlags):
            validate_fibration(fd)

    def test_handle_count(self):
        fd = FibrationDescription(fiber_genus=1, base_genus=1, handle_monodromy=[[[1, 0], [0, 1]]])
        with pytest.raises(DimensionMismatch):
            validate_fibration(fd)

    def test_handle_must_be_symplectic(self):
        fd = FibrationDescription(
            fiber_genus=1, base_genus=1, handle_monodromy=[[[1, 0], [0, 1]], [[2, 0], [0, 1]]]
        )
        with pytest.raises(MatrixNotSymplectic) as exc:
            validate_fibration(fd)
        assert exc.value.path == "handle_monodromy/1"

    def test_cycle_order_must_be_permutation(self):
        fd = genus2_loops(2, cycle_order=[(0, 0), (0, 0)])
        with pytest.raises(InvalidCounts):
            validate_fibration(fd)

    def test_signature_parity(self):
        with pytest.raises(ParityMismatch):
            validate_fibration(genus2_loops(3, signature=0))

    def test_ruled_needs_pencil(self):
        fd = FibrationDescription(
            fiber_genus=1, base_genus=1, handle_monodromy=[[[1, 0], [0, 1]], [[1, 0], [0, 1]]],
            ruled_params=RuledParameters(1, 0),
        )
        with pytest.raises(InconsistentFlags):
            validate_fibration(fd)

    def test_ruled_euler_characteristic(self):
        fd = FibrationDescription(
            fiber_genus=1, base_genus=0, fibers=elliptic_12().fibers, ruled_params=RuledParameters(0, 7)
        )
        with pytest.raises(InconsistentFlags):
            validate_fibration(fd)

    def test_fills_separating_flags(self):
        fd = validate_fibration(genus2_loops(2))
        assert all(f.is_validated for f in fd.fibers)


class TestComputeInvariants:
    def test_elliptic(self):
        report = compute_invariants(elliptic_12())
        assert report.chi == 12
        assert report.b1 == BettiRange(0, 0)
        assert (report.b2_plus, report.b2_minus) == (1, 9)
        assert report.k_squared == 0
        assert report.k_squared_upper == 48
        assert report.torsion == ()
        assert report.monodromy is MonodromyVerdict.IDENTITY
        assert report.warnings == ()

    def test_interval_only(self):
        report = compute_invariants(catalog_entry("TWIST_POWER_H2_NONSEP_K5").fibration)
        assert not report.b1.exact
        assert report.k_squared is None
        assert report.monodromy is MonodromyVerdict.INDETERMINATE
        assert any("interval" in w for w in report.warnings)
        assert any("indeterminate" in w for w in report.warnings)

    def test_empty_fiber_list(self):
        report = compute_invariants(trivial_bundle(2, 2))
        assert report.counts == (0, 0, 0, 0, 0)
        assert report.b1.value == 8
        assert report.k_squared == 8
        assert report.k_squared_upper is None


class TestRandomDescriptions:
    @settings(max_examples=1000)
    @given(st.integers(1, 5), st.integers(0, 2), st.randoms())
    def test_component_bounds_always_hold(self, h, g, rng):
        fd = random_fibration(rng, h, g, max_fibers=6, max_curves=6)
        report = compute_invariants(fd)
        verdicts = component_bounds_check(*report.counts, h, report.all_stable)
        assert not [v for v in verdicts if v.status is Status.VIOLATED]
        assert report.b2_minus_lower >= 1 + report.s

    @settings(max_examples=500)
    @given(st.integers(2, 5), st.randoms())
    def test_stable_bounds_always_hold(self, h, rng):
        fd = random_fibration(rng, h, 0, max_fibers=6, max_curves=3 * h, stable=True)
        report = compute_invariants(fd)
        assert report.all_stable
        verdicts = {v.id: v for v in component_bounds_check(*report.counts, h, True)}
        assert verdicts["REM7-K"].status is Status.HOLDS
        assert verdicts["REM7-N"].status is Status.HOLDS
