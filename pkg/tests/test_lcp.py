"""LCP reduction, complementary enumeration, Q- and P-matrix checks."""

import numpy as np
import pytest

from ave_lab.ave import solve_all
from ave_lab.errors import SingularReductionError
from ave_lab.lcp import (
    LcpInstance,
    ave_to_lcp,
    lcp_solve_enumerative,
    p_matrix_check,
    q_check,
)
from ave_lab.signatures import Signature, enumerate_signatures
from ave_lab.spectrum import rho_a

B = np.array([[1.0, -1.0], [1.0, -1.0]])
M_FROM_B = np.array([[3.0, -2.0], [2.0, -1.0]])


class TestReduction:
    def test_zero_matrix(self):
        rng = np.random.default_rng(2)
        b = rng.standard_normal(3)
        inst = ave_to_lcp(np.zeros((3, 3)), Signature((1, 1, 1)), b)
        assert np.allclose(inst.M, np.eye(3))
        assert np.allclose(inst.q, b)

    def test_b_reduction_matrix(self):
        inst = ave_to_lcp(B, Signature((1, 1)), np.zeros(2))
        assert np.allclose(inst.M, M_FROM_B, atol=1e-12)

    def test_singular_refusal(self):
        with pytest.raises(SingularReductionError):
            ave_to_lcp(np.eye(2), Signature((1, 1)), np.zeros(2))

    def test_round_trip_solutions(self):
        # Solutions of the piecewise equation and of the reduced LCP are in
        # bijection through the positive/negative part splitting of S z.
        rng = np.random.default_rng(14)
        done = 0
        while done < 100:
            n = int(rng.integers(2, 4))
            A = rng.standard_normal((n, n))
            ra = rho_a(A)
            if ra < 1e-8:
                continue
            A = A * (0.9 / ra)
            sig = Signature((1,) * n)
            try:
                inst = ave_to_lcp(A, sig, b := rng.standard_normal(n))
            except SingularReductionError:
                continue
            done += 1
            ave_sols = solve_all(A, b).solutions
            lcp_sols = lcp_solve_enumerative(inst)
            assert len(ave_sols) == len(lcp_sols)
            # forward: z -> v = max(-Sz, 0) solves the LCP
            for s in ave_sols:
                v = np.maximum(-s.z, 0.0)
                assert any(np.allclose(v, ls.z, atol=1e-7) for ls in lcp_sols), s.z
            # backward: (u, v) -> z = u - v solves the piecewise equation
            for ls in lcp_sols:
                z = ls.w - ls.z
                assert any(np.allclose(z, s.z, atol=1e-7) for s in ave_sols), ls.z


class TestEnumerativeSolver:
    def test_interior_solution(self):
        [sol] = lcp_solve_enumerative(LcpInstance(np.eye(2), [-1.0, -2.0]))
        assert np.allclose(sol.z, [1.0, 2.0])
        assert np.allclose(sol.w, [0.0, 0.0], atol=1e-12)

    def test_trivial_solution(self):
        [sol] = lcp_solve_enumerative(LcpInstance(np.eye(2), [1.0, 1.0]))
        assert np.allclose(sol.z, [0.0, 0.0])
        assert np.allclose(sol.w, [1.0, 1.0])

    def test_unsolvable(self):
        assert lcp_solve_enumerative(LcpInstance(-np.eye(2), [-1.0, -1.0])) == []

    def test_complementarity_on_random_instances(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            n = int(rng.integers(1, 5))
            inst = LcpInstance(rng.standard_normal((n, n)), rng.standard_normal(n))
            for sol in lcp_solve_enumerative(inst):
                assert np.min(sol.z) >= -1e-8
                assert np.min(sol.w) >= -1e-8
                assert abs(float(sol.z @ sol.w)) <= 1e-8
                assert np.allclose(inst.M @ sol.z + inst.q, sol.w, atol=1e-8)


class TestQCheck:
    def test_identity_is_q(self):
        report = q_check(np.eye(2))
        assert report.verdict == "Q"
        assert report.method == "exact_2d"

    def test_reduced_b_matrix_is_q_but_not_p(self):
        report = q_check(M_FROM_B)
        assert report.verdict == "Q"
        assert not p_matrix_check(M_FROM_B)

    def test_negated_identity_with_verified_counterexample(self):
        report = q_check(-np.eye(2))
        assert report.verdict == "not_Q"
        assert report.counterexample_q is not None
        assert lcp_solve_enumerative(LcpInstance(-np.eye(2), report.counterexample_q)) == []

    def test_not_q_when_a_column_points_wrong(self):
        # M = diag(1, -1): q = (0, -1) needs w2 = -z2 - 1 >= 0, impossible.
        report = q_check(np.diag([1.0, -1.0]))
        assert report.verdict == "not_Q"

    def test_sampling_mode_stays_conservative(self):
        report = q_check(np.eye(3), samples=200)
        assert report.verdict == "undecided"
        assert report.method == "sampling"
        assert report.failures == 0

    def test_sampling_finds_counterexamples(self):
        report = q_check(-np.eye(3), samples=200)
        assert report.verdict == "not_Q"
        assert report.counterexample_q is not None
        assert lcp_solve_enumerative(LcpInstance(-np.eye(3), report.counterexample_q)) == []

    def test_reduced_matrices_from_contractive_instances(self):
        rng = np.random.default_rng(47)
        done = 0
        while done < 10:
            A = rng.standard_normal((2, 2))
            ra = rho_a(A)
            if ra < 1e-8:
                continue
            A = A * (0.9 / ra)
            done += 1
            for sig in enumerate_signatures(2):
                try:
                    inst = ave_to_lcp(A, sig, np.zeros(2))
                except SingularReductionError:
                    continue
                assert q_check(inst.M).verdict == "Q", (A.tolist(), str(sig))


class TestPMatrix:
    def test_identity(self):
        assert p_matrix_check(np.eye(3))

    def test_negated_identity(self):
        assert not p_matrix_check(-np.eye(2))

    def test_q_without_p(self):
        assert not p_matrix_check(M_FROM_B)
        assert q_check(M_FROM_B).verdict == "Q"

    def test_p_implies_not_not_q(self):
        # Symmetric positive definite matrices are P-matrices.
        rng = np.random.default_rng(53)
        for _ in range(20):
            n = int(rng.integers(2, 4))
            R = rng.standard_normal((n, n))
            M = R @ R.T + 0.2 * np.eye(n)
            assert p_matrix_check(M)
            assert q_check(M, samples=100).verdict != "not_Q"
