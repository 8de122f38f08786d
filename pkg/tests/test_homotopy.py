"""Linear homotopy: breakpoints, degree profiles, circle traces, winding."""

import numpy as np
import pytest

from ave_lab.ave import degree
from ave_lab.errors import DimensionError
from ave_lab.homotopy import (
    circle_trace,
    degree_profile,
    eval_H,
    properness_breakpoints,
    winding_number,
)
from ave_lab.spectrum import rho_a

B = np.array([[1.0, -1.0], [1.0, -1.0]])
C = 2.0 * np.eye(2)


class TestEvalH:
    def test_t_zero_is_identity(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((3, 3))
        z = rng.standard_normal(3)
        assert np.array_equal(eval_H(A, z, 0.0), z)

    def test_kernel_ray(self):
        assert np.allclose(eval_H(B, [1.0, 1.0], 1.0), [1.0, 1.0])

    def test_scaling(self):
        assert np.allclose(eval_H(C, [1.0, 0.0], 0.4), [0.2, 0.0])

    def test_negative_t_refused(self):
        with pytest.raises(ValueError):
            eval_H(B, [1.0, 1.0], -0.1)


class TestBreakpoints:
    def test_twice_identity(self):
        bp = properness_breakpoints(C)
        assert len(bp.breakpoints) == 1
        assert abs(bp.breakpoints[0] - 0.5) <= 1e-9
        assert not bp.has_zero_aligning_value

    def test_b_has_none(self):
        bp = properness_breakpoints(B)
        assert bp.breakpoints == ()
        assert bp.has_zero_aligning_value

    def test_identity(self):
        bp = properness_breakpoints(np.eye(2))
        assert len(bp.breakpoints) == 1
        assert abs(bp.breakpoints[0] - 1.0) <= 1e-9

    def test_ascending(self, matrix_d0):
        bp = properness_breakpoints(matrix_d0)
        assert list(bp.breakpoints) == sorted(bp.breakpoints)
        assert all(p > 0 for p in bp.breakpoints)


class TestDegreeProfile:
    def test_switch(self):
        assert degree_profile(C, [0.4, 1.0]) == [(0.4, 1), (1.0, 0)]

    def test_constant_for_b(self):
        assert degree_profile(B, [0.4, 1.0]) == [(0.4, 1), (1.0, 1)]

    def test_zero_matrix(self):
        assert degree_profile(np.zeros((2, 2)), [0.3, 1.0, 2.0]) == [
            (0.3, 1),
            (1.0, 1),
            (2.0, 1),
        ]

    def test_undefined_at_breakpoint(self):
        [(_, d)] = degree_profile(C, [0.5])
        assert d is None

    def test_constant_between_breakpoints(self):
        rng = np.random.default_rng(19)
        tested = 0
        while tested < 50:
            n = int(rng.integers(2, 4))
            A = rng.standard_normal((n, n))
            if rho_a(A) < 1e-6:
                continue
            bp = list(properness_breakpoints(A).breakpoints)
            edges = [0.0] + bp + [bp[-1] + 1.0 if bp else 2.0]
            tested += 1
            for lo, hi in zip(edges, edges[1:]):
                if hi - lo < 6e-3:
                    continue
                margin = min(1e-3, (hi - lo) / 4.0)
                samples = np.linspace(lo + margin, hi - margin, 3)
                degs = {d for _, d in degree_profile(A, samples, seed=9)}
                assert len(degs) == 1, (A, lo, hi, degs)

    def test_degree_one_below_first_breakpoint(self):
        rng = np.random.default_rng(71)
        done = 0
        while done < 20:
            n = int(rng.integers(2, 4))
            A = rng.standard_normal((n, n))
            ra = rho_a(A)
            if ra < 1e-6:
                continue
            done += 1
            t = 0.9 / ra
            [(_, d)] = degree_profile(A, [t], seed=done)
            assert d == 1


class TestCircleTrace:
    def test_t_zero_gives_unit_circle(self):
        trace = circle_trace(B, 0.0, 64)
        assert np.allclose(trace.images, trace.points)
        assert np.allclose(np.linalg.norm(trace.images, axis=1), 1.0)
        assert winding_number(trace) == 1

    def test_needs_2x2(self):
        with pytest.raises(DimensionError):
            circle_trace(np.eye(3), 1.0)

    def test_needs_enough_samples(self):
        with pytest.raises(ValueError):
            circle_trace(B, 1.0, m=8)

    def test_thetas_ascending_and_consistent(self):
        trace = circle_trace(B, 0.7, 128)
        assert np.all(np.diff(trace.thetas) > 0)
        for theta, point, image in zip(trace.thetas, trace.points, trace.images):
            assert np.allclose(point, [np.cos(theta), np.sin(theta)])
            assert np.allclose(image, eval_H(B, point, 0.7), atol=1e-12)
        assert trace.closed
        assert len(trace.samples) == 128


class TestWinding:
    def test_paper_figures(self):
        assert winding_number(circle_trace(B, 1.0, 360)) == 1
        assert winding_number(circle_trace(B, 0.4, 360)) == 1
        assert winding_number(circle_trace(C, 1.0, 360)) == 0
        assert winding_number(circle_trace(C, 0.4, 360)) == 1

    def test_undefined_when_curve_hits_origin(self):
        # At the breakpoint t = 0.5 the aligning ray collapses to the origin.
        trace = circle_trace(C, 0.5, 360)
        assert winding_number(trace) is None

    def test_matches_degree_on_random_matrices(self):
        rng = np.random.default_rng(83)
        done = 0
        while done < 30:
            A = rng.standard_normal((2, 2))
            t = float(rng.uniform(0.1, 2.0))
            bp = properness_breakpoints(A).breakpoints
            if any(abs(t - p) < 1e-3 for p in bp):
                continue
            w = winding_number(circle_trace(A, t, 720))
            d = degree(t * A, seed=done).degree
            if w is None or d is None:
                continue
            done += 1
            assert w == d, (A.tolist(), t, w, d)
