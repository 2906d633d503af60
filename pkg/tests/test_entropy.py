import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from aent import (
    DegenerateInputError,
    InvalidArgumentError,
    binary_entropy,
    normalize_spectrum,
    page_entropy,
    profile,
    renyi,
    von_neumann,
)

spectra = hnp.arrays(
    np.float64,
    st.integers(min_value=1, max_value=64),
    elements=st.floats(min_value=0.0, max_value=1e6, allow_nan=False),
).filter(lambda a: a.max() > 1e-6)


class TestNormalizeSpectrum:
    def test_three_four_five(self):
        assert np.allclose(normalize_spectrum([3.0, 4.0]), [0.6, 0.8])

    def test_single_value_any_scale(self):
        for c in (1e-300, 1.0, 7.25, 1e200):
            assert np.allclose(normalize_spectrum([c]), [1.0])

    def test_uniform_four(self):
        assert np.allclose(normalize_spectrum([1.0, 1.0, 1.0, 1.0]), [0.5] * 4)

    def test_noise_floor_zeroed(self):
        lam = normalize_spectrum([1.0, 1e-15])
        assert lam[1] == 0.0
        assert lam[0] == 1.0

    def test_rejects_negative(self):
        with pytest.raises(InvalidArgumentError):
            normalize_spectrum([1.0, -0.5])

    def test_rejects_all_zero(self):
        with pytest.raises(DegenerateInputError):
            normalize_spectrum([0.0, 0.0])

    def test_rejects_empty_and_2d(self):
        with pytest.raises(InvalidArgumentError):
            normalize_spectrum([])
        with pytest.raises(InvalidArgumentError):
            normalize_spectrum(np.ones((2, 2)))

    @given(spectra)
    @settings(max_examples=60, deadline=None)
    def test_unit_two_norm(self, sigmas):
        lam = normalize_spectrum(sigmas)
        assert float(np.dot(lam, lam)) == pytest.approx(1.0, abs=1e-12)


class TestVonNeumann:
    def test_pure_state_is_positive_zero(self):
        s = von_neumann([1.0])
        assert s == 0.0
        assert math.copysign(1.0, s) == 1.0

    def test_uniform_32_is_five_bits(self):
        lam = normalize_spectrum(np.ones(32))
        assert von_neumann(lam) == pytest.approx(5.0, abs=1e-12)

    def test_three_four_five_value(self):
        assert von_neumann([0.6, 0.8]) == pytest.approx(0.9426831892554921, abs=1e-14)

    def test_base_e(self):
        lam = normalize_spectrum(np.ones(32))
        assert von_neumann(lam, base=math.e) == pytest.approx(math.log(32), abs=1e-12)

    def test_rejects_unnormalized(self):
        with pytest.raises(InvalidArgumentError):
            von_neumann([0.6, 0.7])

    @given(spectra)
    @settings(max_examples=60, deadline=None)
    def test_bounded_by_log_dim(self, sigmas):
        lam = normalize_spectrum(sigmas)
        s = von_neumann(lam)
        assert 0.0 <= s <= math.log2(lam.size) + 1e-9


class TestRenyi:
    def test_uniform_matches_log_dim(self):
        lam = normalize_spectrum(np.ones(8))
        assert renyi(lam, 2.0) == pytest.approx(3.0, abs=1e-12)

    def test_pure_state_is_positive_zero(self):
        s = renyi([1.0], 2.0)
        assert s == 0.0
        assert math.copysign(1.0, s) == 1.0

    def test_alpha_validation(self):
        for alpha in (1.0, 0.0, -2.0):
            with pytest.raises(InvalidArgumentError):
                renyi([1.0], alpha)

    @given(spectra)
    @settings(max_examples=60, deadline=None)
    def test_renyi2_below_von_neumann(self, sigmas):
        lam = normalize_spectrum(sigmas)
        assert renyi(lam, 2.0) <= von_neumann(lam) + 1e-9


class TestBinaryEntropy:
    def test_known_values(self):
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-14)
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert binary_entropy(0.25) == pytest.approx(0.8112781244591328, abs=1e-14)

    def test_symmetry(self):
        for u in (0.1, 0.3, 0.487):
            assert binary_entropy(u) == pytest.approx(binary_entropy(1.0 - u))

    def test_domain_check(self):
        with pytest.raises(InvalidArgumentError):
            binary_entropy(-0.01)
        with pytest.raises(InvalidArgumentError):
            binary_entropy(1.01)


class TestPageEntropy:
    def test_square_values(self):
        assert page_entropy(32, 32) == pytest.approx(4.278652479555518, abs=1e-12)
        assert page_entropy(2048, 2048) == pytest.approx(10.278652479555518, abs=1e-12)

    def test_thin_subsystem_near_saturation(self):
        assert page_entropy(2, 2**21) == pytest.approx(0.9999993120693965, abs=1e-15)

    def test_trivial_subsystem_clamps_to_zero(self):
        assert page_entropy(1, 8) == 0.0

    def test_orientation_enforced(self):
        with pytest.raises(InvalidArgumentError):
            page_entropy(8, 4)
        with pytest.raises(InvalidArgumentError):
            page_entropy(0, 4)

    def test_nats(self):
        got = page_entropy(16, 64, base=math.e)
        assert got == pytest.approx(math.log(16) - 16 / 128.0, abs=1e-12)


class TestProfile:
    def test_identity_four(self):
        prof = profile(np.eye(4))
        assert list(prof.cuts) == [1, 2, 3]
        assert np.allclose(prof.entropies, [1.0, 2.0, 1.0], atol=1e-10)
        mid = prof.record_at(2)
        assert (mid.d_left, mid.d_right, mid.chi) == (4, 4, 4)
        assert mid.normalized == pytest.approx(1.0, abs=1e-12)

    def test_rank_one_vanishes_at_row_column_cut(self):
        # rank one concerns the matrix split only; interior cuts still
        # see structure inside the row and column factors
        rng = np.random.default_rng(3)
        matrix = np.outer(rng.standard_normal(8), rng.standard_normal(8))
        rec = profile(matrix).record_at(3)
        assert (rec.d_left, rec.d_right) == (8, 8)
        assert rec.entropy == 0.0
        assert math.copysign(1.0, rec.entropy) == 1.0
        assert rec.renyi2 == 0.0
        assert rec.chi == 1

    def test_full_product_state_is_flat_zero(self):
        rng = np.random.default_rng(6)
        row = np.kron(np.kron(rng.standard_normal(2), rng.standard_normal(2)), rng.standard_normal(2))
        col = np.kron(rng.standard_normal(2), rng.standard_normal(2))
        prof = profile(np.outer(row, col))
        assert len(prof.records) == 4
        for rec in prof.records:
            assert rec.entropy == 0.0
            assert rec.chi == 1

    def test_base_change_is_uniform_rescale(self):
        matrix = np.random.default_rng(8).standard_normal((12, 6))
        bits = profile(matrix)
        nats = profile(matrix, base=math.e)
        assert np.allclose(nats.entropies, bits.entropies * math.log(2.0), atol=1e-10)

    def test_normalized_in_unit_interval(self):
        matrix = np.random.default_rng(4).standard_normal((16, 16))
        for rec in profile(matrix).records:
            assert 0.0 <= rec.normalized <= 1.0 + 1e-12

    def test_truncated_profile_entropy_capped(self):
        matrix = np.random.default_rng(5).standard_normal((32, 32))
        prof = profile(matrix, chi_max=3)
        assert prof.chi_max == 3
        for rec in prof.records:
            assert rec.chi <= 3
            assert rec.entropy <= math.log2(3) + 1e-9

    def test_one_by_one_has_no_cuts(self):
        prof = profile(np.array([[2.5]]))
        assert prof.records == []

    def test_record_at_missing_cut(self):
        with pytest.raises(InvalidArgumentError):
            profile(np.eye(4)).record_at(9)
