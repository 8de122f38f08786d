"""Max-min quotient functionals and the coincidence report."""

import numpy as np
import pytest

from ave_lab.bench import perron_root
from ave_lab.compare import (
    coincidence_report,
    maxmin_over_nonneg,
    maxmin_over_sphere,
    quotient_functional,
)
from ave_lab.spectrum import rho_a, rho_sign_real

B = np.array([[1.0, -1.0], [1.0, -1.0]])


class TestQuotientFunctional:
    def test_identity(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            x = rng.standard_normal(3)
            assert quotient_functional(np.eye(3), x) == pytest.approx(1.0)

    def test_sign_eigenvector_of_b(self):
        assert quotient_functional(B, [1.0, -1.0]) == pytest.approx(2.0)

    def test_zero_component_excluded(self):
        assert quotient_functional(B, [1.0, 0.0]) == pytest.approx(1.0)

    def test_zero_vector_refused(self):
        with pytest.raises(ValueError):
            quotient_functional(B, [0.0, 0.0])

    def test_scale_invariance(self):
        rng = np.random.default_rng(7)
        A = rng.standard_normal((3, 3))
        x = rng.standard_normal(3)
        assert quotient_functional(A, x) == pytest.approx(quotient_functional(A, 7.5 * x))


class TestMaxMinSearches:
    def test_identity(self):
        assert maxmin_over_sphere(np.eye(2), restarts=8).value == pytest.approx(1.0)
        assert maxmin_over_nonneg(np.eye(2), restarts=8).value == pytest.approx(1.0)

    def test_b_reaches_sign_real_radius(self):
        result = maxmin_over_sphere(B, restarts=16)
        assert result.value >= 2.0 - 1e-4
        assert result.value <= 2.0 + 1e-6

    def test_b_nonneg_value(self):
        # Over the closed orthant the supremum is 1, attained on the axis
        # where the second component drops out of the minimum.
        result = maxmin_over_nonneg(B, restarts=16)
        assert result.value == pytest.approx(1.0, abs=1e-6)
        assert result.restricted_nonneg

    def test_nonnegative_matrices_reach_perron_root(self):
        rng = np.random.default_rng(11)
        for _ in range(5):
            n = int(rng.integers(2, 5))
            A = rng.random((n, n))
            root, _ = perron_root(A)
            assert maxmin_over_sphere(A, restarts=16).value == pytest.approx(root, abs=1e-3)
            assert maxmin_over_nonneg(A, restarts=16).value == pytest.approx(root, abs=1e-3)

    def test_lower_bound_of_sign_real_radius(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            n = int(rng.integers(1, 5))
            A = rng.standard_normal((n, n))
            assert maxmin_over_sphere(A, restarts=8).value <= rho_sign_real(A) + 1e-6

    def test_orthant_value_below_sphere_value(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            n = int(rng.integers(1, 5))
            A = rng.standard_normal((n, n))
            assert (
                maxmin_over_nonneg(A, restarts=8).value
                <= maxmin_over_sphere(A, restarts=8).value + 1e-9
            )

    def test_trace_bookkeeping(self):
        result = maxmin_over_sphere(B, restarts=8)
        assert result.iterations > 0
        assert len(result.best_curve) == 16  # sphere polls both search modes
        assert result.best_curve[-1] == pytest.approx(result.value)
        assert list(result.best_curve) == sorted(result.best_curve)

    def test_deterministic_given_seed(self):
        a = maxmin_over_sphere(B, seed=5, restarts=8)
        b = maxmin_over_sphere(B, seed=5, restarts=8)
        assert a.value == b.value
        assert np.array_equal(a.argmax, b.argmax)


class TestCoincidenceReport:
    def test_nonnegative_matrix(self):
        rng = np.random.default_rng(19)
        A = rng.random((3, 3))
        report = coincidence_report(A, restarts=16)
        assert report.coincide_spectra
        assert report.coincide_functionals

    def test_b_spectra_differ(self):
        report = coincidence_report(B, restarts=16)
        assert not report.coincide_spectra
        assert report.rho_a <= 1e-9
        assert report.rho_R == pytest.approx(2.0)
        # Diagnostic only: both conventions are reported, nothing asserted
        # about the interior value beyond it being recorded.
        assert np.isfinite(report.rhs_interior)

    def test_identity(self):
        report = coincidence_report(np.eye(2), restarts=8)
        assert report.coincide_spectra
        assert report.coincide_functionals
        assert report.rho_a == pytest.approx(1.0)
        assert report.rho_R == pytest.approx(1.0)

    def test_forward_direction(self):
        # Whenever the radii coincide the functional values must agree too.
        rng = np.random.default_rng(23)
        for _ in range(10):
            n = int(rng.integers(2, 4))
            A = rng.random((n, n)) if rng.random() < 0.5 else rng.standard_normal((n, n))
            report = coincidence_report(A, restarts=16)
            if report.coincide_spectra:
                assert report.coincide_functionals

    def test_functionals_bracket_radii(self):
        rng = np.random.default_rng(29)
        A = rng.random((2, 2))
        report = coincidence_report(A, restarts=16)
        assert report.lhs == pytest.approx(report.rho_R, abs=1e-3)
        assert report.rhs == pytest.approx(report.rho_a, abs=1e-3)
