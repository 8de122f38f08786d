"""AVE-LCP reduction, complementary-cone enumeration and Q/P-matrix checks.

With y = S z, u = max(y, 0), v = max(-y, 0), the equation z - A|z| = b turns
into the complementarity system u = M v + q with M = (I - SA)^-1 (I + SA)
and q = (I - SA)^-1 S b.  Solvability of the LCP for every q is coverage of
space by the 2**n complementary cones; in the plane that coverage can be
decided exactly by sweeping the circle, in higher dimensions it is only
sampled (a clean sample never upgrades the verdict beyond "undecided").
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapExceededError, SingularReductionError
from .linalg import (
    DEFAULT_MAX_N,
    DEFAULT_TOL,
    Tolerances,
    as_square_matrix,
    as_vector,
    det_sign,
    mat_norm_inf,
    vec_norm_inf,
)
from .signatures import Signature

__all__ = [
    "LcpInstance",
    "LcpSolution",
    "QCheckReport",
    "ave_to_lcp",
    "lcp_solve_enumerative",
    "p_matrix_check",
    "q_check",
]

VERDICT_Q = "Q"
VERDICT_NOT_Q = "not_Q"
VERDICT_UNDECIDED = "undecided"


@dataclass(frozen=True)
class LcpInstance:
    """Find z >= 0 with w = M z + q >= 0 and z^T w = 0."""

    M: np.ndarray
    q: np.ndarray

    def __post_init__(self) -> None:
        M = as_square_matrix(self.M)
        q = as_vector(self.q, M.shape[0])
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class LcpSolution:
    z: np.ndarray
    w: np.ndarray
    basis: tuple[int, ...]  # indices where z is basic


@dataclass(frozen=True)
class QCheckReport:
    verdict: str  # "Q" | "not_Q" | "undecided"
    method: str  # "exact_2d" | "sampling"
    counterexample_q: np.ndarray | None
    samples: int
    failures: int = 0
    warnings: tuple[str, ...] = ()


def ave_to_lcp(A, S: Signature, b, tol: Tolerances = DEFAULT_TOL) -> LcpInstance:
    """Reduce z - A|z| = b to the LCP (q, M) through the signature S.

    Requires I - SA invertible.  z solves the equation exactly when the
    positive/negative parts (u, v) of S z satisfy u = M v + q with the
    complementarity u^T v = 0; v is the LCP variable and u its slack.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    b = as_vector(b, n)
    SA = S.as_vector()[:, None] * A
    front = np.eye(n) - SA
    if det_sign(front, tol) == 0:
        raise SingularReductionError(f"I - SA is singular for signature {S}")
    M = np.linalg.solve(front, np.eye(n) + SA)
    q = np.linalg.solve(front, S.as_vector() * b)
    return LcpInstance(M, q)


def lcp_solve_enumerative(
    inst: LcpInstance, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N
) -> list[LcpSolution]:
    """All complementary solutions of the LCP by basis enumeration.

    For each index set alpha the system pins z outside alpha and w inside
    alpha to zero, solves the square subsystem and keeps the result when
    both z and w come out nonnegative.  Cost is 2**n subsystems.
    """
    M, q = inst.M, inst.q
    n = M.shape[0]
    if n > max_n:
        raise CapExceededError(f"enumerating 2**{n} complementary bases exceeds cap {max_n}")
    qscale = max(1.0, vec_norm_inf(q))
    solutions: list[LcpSolution] = []
    for r in range(n + 1):
        for alpha in itertools.combinations(range(n), r):
            idx = list(alpha)
            z = np.zeros(n)
            if idx:
                sub = M[np.ix_(idx, idx)]
                s = np.linalg.svd(sub, compute_uv=False)
                if s[0] == 0.0 or s[-1] <= tol.tol_sing * s[0]:
                    # Degenerate cone: take the minimum-norm representative if
                    # the subsystem is consistent at all.
                    za, *_ = np.linalg.lstsq(sub, -q[idx], rcond=None)
                    if vec_norm_inf(sub @ za + q[idx]) > tol.tol_residual * qscale * max(
                        1.0, mat_norm_inf(sub)
                    ):
                        continue
                else:
                    za = np.linalg.solve(sub, -q[idx])
                z[idx] = za
            w = M @ z + q
            feas = tol.tol_nonneg * max(1.0, qscale, vec_norm_inf(z), vec_norm_inf(w))
            if np.min(z) < -feas or np.min(w) < -feas:
                continue
            if any(
                vec_norm_inf(z - s.z) <= tol.tol_dedupe * max(1.0, vec_norm_inf(z))
                for s in solutions
            ):
                continue
            solutions.append(LcpSolution(z=z, w=w, basis=tuple(alpha)))
    return solutions


def _cone_generators(M: np.ndarray, alpha: tuple[int, ...]) -> list[np.ndarray]:
    n = M.shape[0]
    eye = np.eye(n)
    return [(-M[:, i] if i in alpha else eye[:, i]) for i in range(n)]


def _in_cone_2d(p: np.ndarray, u: np.ndarray, v: np.ndarray, eps: float = 1e-9) -> bool:
    """Is the unit vector p a nonnegative combination of u and v?"""
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu <= eps and nv <= eps:
        return False
    if nu <= eps or nv <= eps:
        g = v / nv if nu <= eps else u / nu
        return abs(p[0] * g[1] - p[1] * g[0]) <= eps and float(p @ g) > 0.0
    u, v = u / nu, v / nv
    det = float(u[0] * v[1] - u[1] * v[0])
    if abs(det) <= eps:
        if float(u @ v) > 0.0:  # same ray
            return abs(p[0] * u[1] - p[1] * u[0]) <= eps and float(p @ u) > 0.0
        # Opposite generators span the whole line through u.
        return abs(p[0] * u[1] - p[1] * u[0]) <= eps
    a = (p[0] * v[1] - p[1] * v[0]) / det
    b = (u[0] * p[1] - u[1] * p[0]) / det
    return a >= -eps and b >= -eps


def _q_check_exact_2d(M: np.ndarray, tol: Tolerances) -> QCheckReport:
    """Exact complementary-cone coverage of the circle for n = 2."""
    alphas = [(), (0,), (1,), (0, 1)]
    cones = [_cone_generators(M, a) for a in alphas]
    angles: list[float] = []
    for u, v in cones:
        for g in (u, v):
            norm = float(np.linalg.norm(g))
            if norm > tol.tol_sing:
                angles.append(float(np.arctan2(g[1], g[0])) % (2.0 * np.pi))
                # A degenerate (line-like) cone covers the opposite angle too.
                angles.append((float(np.arctan2(g[1], g[0])) + np.pi) % (2.0 * np.pi))
    angles = sorted(set(angles))
    probes: list[float] = list(angles)
    for a, b in zip(angles, angles[1:] + [angles[0] + 2.0 * np.pi]):
        probes.append(0.5 * (a + b))
    for theta in probes:
        p = np.array([np.cos(theta), np.sin(theta)])
        if any(_in_cone_2d(p, u, v) for u, v in cones):
            continue
        # Uncovered direction: verify unsolvability before declaring not_Q.
        sols = lcp_solve_enumerative(LcpInstance(M, p), tol)
        if not sols:
            return QCheckReport(VERDICT_NOT_Q, "exact_2d", p, samples=len(probes))
        # Tolerance disagreement between the sweep and the enumeration: the
        # enumeration wins, keep scanning.
    return QCheckReport(VERDICT_Q, "exact_2d", None, samples=len(probes))


def _q_check_exact_1d(M: np.ndarray, tol: Tolerances) -> QCheckReport:
    m = float(M[0, 0])
    if m > tol.tol_sing:
        return QCheckReport(VERDICT_Q, "exact_2d", None, samples=2)
    counterexample = np.array([-1.0])
    if lcp_solve_enumerative(LcpInstance(M, counterexample), tol):
        return QCheckReport(VERDICT_Q, "exact_2d", None, samples=2)
    return QCheckReport(VERDICT_NOT_Q, "exact_2d", counterexample, samples=2)


def q_check(
    M,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 42,
    samples: int = 500,
    max_n: int = DEFAULT_MAX_N,
) -> QCheckReport:
    """Is M a Q-matrix, i.e. is the LCP (q, M) solvable for every q?

    n <= 2 is decided exactly by angular coverage of the complementary
    cones.  For n > 2 unit-normal samples are drawn; any verified
    unsolvable q yields "not_Q" with the counterexample, while a clean run
    stays "undecided" since sampling cannot certify coverage.
    """
    M = as_square_matrix(M)
    n = M.shape[0]
    if n == 1:
        return _q_check_exact_1d(M, tol)
    if n == 2:
        return _q_check_exact_2d(M, tol)
    if n > max_n:
        raise CapExceededError(f"q_check enumeration for n={n} exceeds cap {max_n}")

    rng = np.random.default_rng(seed)
    Q = rng.standard_normal((n, samples))
    Q /= np.linalg.norm(Q, axis=0, keepdims=True)
    solvable = np.zeros(samples, dtype=bool)
    warnings: list[str] = []
    for r in range(n + 1):
        for alpha in itertools.combinations(range(n), r):
            idx = list(alpha)
            if not idx:
                solvable |= np.all(Q >= -tol.tol_nonneg, axis=0)
                continue
            sub = M[np.ix_(idx, idx)]
            s = np.linalg.svd(sub, compute_uv=False)
            if s[0] == 0.0 or s[-1] <= tol.tol_sing * s[0]:
                warnings.append(f"degenerate complementary cone skipped: alpha={alpha}")
                continue
            Z = np.linalg.solve(sub, -Q[idx, :])
            W = M[:, idx] @ Z + Q
            feas_tol = tol.tol_nonneg * np.maximum(
                1.0, np.maximum(np.max(np.abs(Z), axis=0), np.max(np.abs(W), axis=0))
            )
            comp = [i for i in range(n) if i not in alpha]
            ok = np.all(Z >= -feas_tol, axis=0) & np.all(W[comp, :] >= -feas_tol, axis=0)
            solvable |= ok
    failures = 0
    for j in np.nonzero(~solvable)[0]:
        qj = Q[:, j]
        if lcp_solve_enumerative(LcpInstance(M, qj), tol):
            continue  # vectorized pass was too strict; the sample is solvable
        failures += 1
        return QCheckReport(
            VERDICT_NOT_Q, "sampling", qj, samples=samples, failures=failures,
            warnings=tuple(warnings),
        )
    return QCheckReport(
        VERDICT_UNDECIDED, "sampling", None, samples=samples, failures=0,
        warnings=tuple(warnings),
    )


def p_matrix_check(M, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> bool:
    """True iff every principal minor of M is positive."""
    M = as_square_matrix(M)
    n = M.shape[0]
    if n > max_n:
        raise CapExceededError(f"p_matrix_check enumerates 2**{n} minors, cap is {max_n}")
    for r in range(1, n + 1):
        for alpha in itertools.combinations(range(n), r):
            sub = M[np.ix_(alpha, alpha)]
            floor = tol.tol_sing * max(1.0, mat_norm_inf(sub)) ** r
            if float(np.linalg.det(sub)) <= floor:
                return False
    return True
