"""The piecewise linear map F_A(z) = z - A|z|.

On the orthant of a signature S the map acts as the matrix I - A S, so the
equation F_A(z) = b decomposes into 2**n linear systems filtered by orthant
membership.  The mapping degree is then the orientation-signed preimage
count over a regular right-hand side, sampled repeatedly with a unanimity
requirement so that degree constancy doubles as a self-check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconclusiveProbeError, NumericError
from .linalg import (
    DEFAULT_MAX_N,
    DEFAULT_TOL,
    Tolerances,
    as_square_matrix,
    as_vector,
    det_sign,
    kernel_basis,
    mat_norm_inf,
    rank,
    vec_norm_inf,
)
from .signatures import Signature, enumerate_signatures, orthant_membership
from .spectrum import AligningPair, is_degenerate

__all__ = [
    "AveSolution",
    "CONTRACTED",
    "COLLAPSED",
    "DegreeReport",
    "LINE_DETECTED",
    "POINTED_LOWDIM",
    "PiecewiseLinearMap",
    "REFLECTED",
    "SIMPLICIAL",
    "SolveReport",
    "aligning_direction_check",
    "degree",
    "eval_F",
    "ker_im_intersection_trivial",
    "kernel_meets_orthant",
    "orthant_image_degeneracy",
    "solve_all",
]

CONTRACTED = "contracted"
COLLAPSED = "collapsed"
REFLECTED = "reflected"

SIMPLICIAL = "simplicial"
POINTED_LOWDIM = "pointed_lowdim"
LINE_DETECTED = "line_detected"


@dataclass(frozen=True)
class AveSolution:
    """One solution z of z - A|z| = b with the orthants that contain it."""

    z: np.ndarray
    signatures: tuple[Signature, ...]
    on_boundary: bool
    orientation: int  # sign of det(I - A S); 0 if singular or ambiguous


@dataclass(frozen=True)
class SolveReport:
    solutions: tuple[AveSolution, ...]
    b_regular: bool
    singular_orthants: tuple[Signature, ...]
    continuum_orthants: tuple[Signature, ...] = ()
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class DegreeReport:
    """Mapping degree with sampling diagnostics.

    ``degree`` is None when undefined (degenerate map, trial disagreement or
    rejection budget exhausted); ``reason`` then says why.  ``max_preimages``
    records the largest solution count seen over accepted trials, as a
    diagnostic only.
    """

    degree: int | None
    trials_used: int
    trials_rejected: int
    seed: int
    reason: str = ""
    max_preimages: int = 0


def eval_F(A, z) -> np.ndarray:
    """Evaluate z - A|z|."""
    A = as_square_matrix(A)
    z = as_vector(z, A.shape[0])
    return z - A @ np.abs(z)


@dataclass
class _Piece:
    signature: Signature
    matrix: np.ndarray
    inverse: np.ndarray | None
    det: int  # sign of det, 0 when numerically singular


class PiecewiseLinearMap:
    """F_A with its per-orthant matrices factored once.

    Reuse one instance for many right-hand sides (the degree engine and the
    property suites do); all methods are pure given the constructor inputs.
    """

    def __init__(self, A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N):
        self.A = as_square_matrix(A)
        self.n = self.A.shape[0]
        self.tol = tol
        self.scale = max(1.0, mat_norm_inf(self.A))
        eye = np.eye(self.n)
        self.pieces: list[_Piece] = []
        for sig in enumerate_signatures(self.n, max_n=max_n):
            M = eye - self.A * sig.as_vector()[None, :]
            sgn = det_sign(M, tol)
            inv = np.linalg.inv(M) if sgn != 0 else None
            self.pieces.append(_Piece(sig, M, inv, sgn))

    def evaluate(self, z) -> np.ndarray:
        return eval_F(self.A, z)

    def solve_report(self, b) -> SolveReport:
        """All solutions of z - A|z| = b, orthant by orthant.

        Nonsingular orthants contribute their unique linear solution when it
        lies in the orthant.  Singular orthants are parametrized through the
        kernel: an isolated intersection point is kept, a higher-dimensional
        intersection raises the continuum flag instead of being sampled.
        """
        b = as_vector(b, self.n)
        bscale = max(1.0, vec_norm_inf(b))
        tol = self.tol
        candidates: list[np.ndarray] = []
        singular: list[Signature] = []
        continuum: list[Signature] = []
        warnings: list[str] = []

        for piece in self.pieces:
            if piece.inverse is not None:
                z = piece.inverse @ b
                bound = tol.tol_residual * max(1.0, mat_norm_inf(piece.matrix)) * bscale
                if vec_norm_inf(piece.matrix @ z - b) > bound:
                    z = np.linalg.solve(piece.matrix, b)
                    if vec_norm_inf(piece.matrix @ z - b) > bound:
                        warnings.append(f"residual bound missed in orthant {piece.signature}")
                if orthant_membership(piece.signature, z, tol).inside:
                    candidates.append(z)
            else:
                singular.append(piece.signature)
                outcome, point = self._singular_orthant(piece, b, bscale)
                if outcome == "point" and point is not None:
                    candidates.append(point)
                elif outcome == "continuum":
                    continuum.append(piece.signature)

        solutions = self._collect(candidates, b, bscale, warnings)
        b_regular = not continuum and all(
            (not s.on_boundary) and s.orientation != 0 for s in solutions
        )
        return SolveReport(
            solutions=tuple(solutions),
            b_regular=b_regular,
            singular_orthants=tuple(singular),
            continuum_orthants=tuple(continuum),
            warnings=tuple(warnings),
        )

    def _singular_orthant(self, piece: _Piece, b: np.ndarray, bscale: float):
        """Intersect the affine solution set of a singular piece with its orthant.

        Returns ("none", None), ("point", z) or ("continuum", None).
        """
        tol = self.tol
        M = piece.matrix
        z0, *_ = np.linalg.lstsq(M, b, rcond=None)
        if vec_norm_inf(M @ z0 - b) > tol.tol_residual * max(1.0, mat_norm_inf(M)) * bscale:
            return "none", None  # inconsistent system, no solutions here
        basis = kernel_basis(M, tol)
        if not basis:
            return "none", None
        sig_vec = piece.signature.as_vector()
        if len(basis) == 1:
            return self._line_segment(z0, basis[0], sig_vec)
        return self._polytope_probe(z0, basis, sig_vec)

    def _line_segment(self, z0: np.ndarray, k: np.ndarray, sig_vec: np.ndarray):
        """Feasible parameter interval of z0 + s k inside the orthant."""
        tol = self.tol
        slack = tol.tol_boundary * max(1.0, vec_norm_inf(z0))
        lo, hi = -np.inf, np.inf
        for a, c in zip(sig_vec * k, sig_vec * z0):
            if abs(a) <= tol.tol_boundary:
                if c < -slack:
                    return "none", None
                continue
            bound = -c / a
            if a > 0:
                lo = max(lo, bound)
            else:
                hi = min(hi, bound)
        eps = tol.tol_dedupe * max(1.0, abs(lo) if np.isfinite(lo) else 0.0, abs(hi) if np.isfinite(hi) else 0.0)
        if lo > hi + eps:
            return "none", None
        if not np.isfinite(lo) or not np.isfinite(hi):
            return "continuum", None
        if hi - lo <= eps:
            return "point", z0 + 0.5 * (lo + hi) * k
        return "continuum", None

    def _polytope_probe(self, z0: np.ndarray, basis: list[np.ndarray], sig_vec: np.ndarray):
        """LP decision for kernel dimension >= 2: empty, single point, or continuum."""
        from scipy.optimize import linprog

        tol = self.tol
        K = np.column_stack(basis)
        d = K.shape[1]
        slack = tol.tol_boundary * max(1.0, vec_norm_inf(z0))
        A_ub = -(sig_vec[:, None] * K)
        b_ub = sig_vec * z0 + slack
        bounds = [(None, None)] * d
        feas = linprog(np.zeros(d), A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
        if not feas.success:
            return "none", None
        lows, highs = [], []
        for j in range(d):
            c = np.zeros(d)
            c[j] = 1.0
            lo = linprog(c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
            hi = linprog(-c, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs")
            if lo.status == 3 or hi.status == 3:
                return "continuum", None
            if not (lo.success and hi.success):
                return "continuum", None
            lows.append(lo.fun)
            highs.append(-hi.fun)
        widths = np.array(highs) - np.array(lows)
        span = max(1.0, float(np.max(np.abs(lows))), float(np.max(np.abs(highs))))
        if np.any(widths > tol.tol_dedupe * span):
            return "continuum", None
        mid = 0.5 * (np.array(lows) + np.array(highs))
        return "point", z0 + K @ mid

    def _collect(self, candidates, b, bscale, warnings) -> list[AveSolution]:
        tol = self.tol
        piece_by_sig = {p.signature: p for p in self.pieces}
        reps: list[np.ndarray] = []
        for z in candidates:
            dup = any(
                vec_norm_inf(z - r) <= tol.tol_dedupe * max(1.0, vec_norm_inf(r), vec_norm_inf(z))
                for r in reps
            )
            if not dup:
                reps.append(z)

        solutions = []
        fbound = tol.tol_residual * self.scale * bscale
        for z in reps:
            sigs = tuple(
                p.signature for p in self.pieces if orthant_membership(p.signature, z, tol).inside
            )
            if not sigs:
                sigs = tuple(
                    p.signature
                    for p in self.pieces
                    if vec_norm_inf(p.matrix @ z - b) <= fbound
                )
            dets = {piece_by_sig[s].det for s in sigs}
            orientation = dets.pop() if len(dets) == 1 and 0 not in dets else 0
            residual = vec_norm_inf(self.evaluate(z) - b)
            if residual > fbound:
                warnings.append(
                    f"solution residual {residual:.3g} exceeds bound {fbound:.3g} at z={z.tolist()}"
                )
            solutions.append(
                AveSolution(
                    z=z,
                    signatures=sigs,
                    on_boundary=len(sigs) > 1,
                    orientation=int(orientation),
                )
            )
        solutions.sort(key=lambda s: tuple(s.z))
        return solutions


def solve_all(A, b, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> SolveReport:
    """Solve z - A|z| = b over every orthant.  See PiecewiseLinearMap."""
    return PiecewiseLinearMap(A, tol, max_n=max_n).solve_report(b)


def degree(
    A,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 42,
    trials: int = 7,
    max_rejections: int = 100,
    max_n: int = DEFAULT_MAX_N,
) -> DegreeReport:
    """Mapping degree of F_A by oriented preimage counting.

    Draws seeded standard-normal right-hand sides (normalized to unit
    Euclidean norm); a trial is accepted when b is regular, i.e. no boundary
    solutions and every orientation nonzero.  All accepted trials must agree
    on the orientation sum, otherwise the degree is reported as undefined.
    A degenerate map (an aligning value at 1) is refused immediately since
    its degree is not defined.
    """
    A = as_square_matrix(A)
    if is_degenerate(A, tol, max_n=max_n):
        return DegreeReport(None, 0, 0, seed, reason="degenerate")
    pwl = PiecewiseLinearMap(A, tol, max_n=max_n)
    rng = np.random.default_rng(seed)
    accepted: list[int] = []
    rejected = 0
    max_preimages = 0
    while len(accepted) < trials:
        if rejected >= max_rejections:
            return DegreeReport(
                None, len(accepted), rejected, seed, reason="rejection_budget_exhausted"
            )
        b = rng.standard_normal(pwl.n)
        norm = float(np.linalg.norm(b))
        if norm == 0.0:
            rejected += 1
            continue
        report = pwl.solve_report(b / norm)
        if not report.b_regular:
            rejected += 1
            continue
        accepted.append(sum(s.orientation for s in report.solutions))
        max_preimages = max(max_preimages, len(report.solutions))
    if len(set(accepted)) != 1:
        return DegreeReport(
            None, len(accepted), rejected, seed, reason="trial_disagreement",
            max_preimages=max_preimages,
        )
    return DegreeReport(accepted[0], len(accepted), rejected, seed, max_preimages=max_preimages)


def aligning_direction_check(A, pair: AligningPair, tol: Tolerances = DEFAULT_TOL) -> str:
    """Classify how F_A moves the aligning ray of the given pair.

    The ray through w = S v satisfies F_A(w) = (1 - lambda) w, so its image
    stays on the ray (lambda < 1, "contracted"), collapses to the origin
    (lambda = 1, "collapsed") or flips to the opposite ray (lambda > 1,
    "reflected").  The opposite ray is always mapped into itself.  Both
    identities are verified numerically; a mismatch is an invariant breach
    and raises NumericError.
    """
    A = as_square_matrix(A)
    lam = pair.value
    w = pair.aligning_vector
    scale = max(1.0, mat_norm_inf(A))
    check_tol = 10.0 * (tol.tol_residual + 2.0 * tol.tol_nonneg) * scale
    fw = eval_F(A, w)
    if vec_norm_inf(fw - (1.0 - lam) * w) > check_tol:
        raise NumericError(
            f"aligning ray image mismatch: |F(w) - (1-lambda) w| = "
            f"{vec_norm_inf(fw - (1.0 - lam) * w):.3g}"
        )
    bw = eval_F(A, -w)
    if vec_norm_inf(bw + (1.0 + lam) * w) > check_tol:
        raise NumericError(
            f"opposite ray image mismatch: |F(-w) + (1+lambda) w| = "
            f"{vec_norm_inf(bw + (1.0 + lam) * w):.3g}"
        )
    if abs(lam - 1.0) <= tol.tol_dedupe:
        return COLLAPSED
    return CONTRACTED if lam < 1.0 else REFLECTED


def kernel_meets_orthant(M, S: Signature, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Does the kernel of M intersect the orthant of S in a nonzero point?

    Trivial kernel: False.  One-dimensional kernel: exact (the kernel vector
    or its negative lies in the orthant or neither does).  Higher dimension:
    probed through the basis vectors and the projection of the signed
    all-ones vector onto the kernel; if no probe lands in the orthant the
    question is left open and InconclusiveProbeError is raised.
    """
    M = as_square_matrix(M)
    basis = kernel_basis(M, tol)
    if not basis:
        return False
    if len(basis) == 1:
        k = basis[0]
        return (
            orthant_membership(S, k, tol).inside or orthant_membership(S, -k, tol).inside
        )
    probes = list(basis)
    B = np.column_stack(basis)
    probes.append(B @ (B.T @ S.as_vector()))
    for probe in probes:
        if vec_norm_inf(probe) <= tol.tol_sing:
            continue
        if orthant_membership(S, probe, tol).inside or orthant_membership(S, -probe, tol).inside:
            return True
    raise InconclusiveProbeError(
        f"kernel of dimension {len(basis)} may meet orthant {S} undetected"
    )


def ker_im_intersection_trivial(A, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff ker(I - A) and im(I - A) intersect only in the origin."""
    A = as_square_matrix(A)
    n = A.shape[0]
    M = np.eye(n) - A
    kern = kernel_basis(M, tol)
    if not kern:
        return True
    u, _, _ = np.linalg.svd(M)
    r = rank(M, tol)
    image = [u[:, i] for i in range(r)]
    if not image:
        return True
    stacked = np.column_stack(kern + image)
    return rank_rect(stacked, tol) == len(kern) + len(image)


def rank_rect(M: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> int:
    """Numerical rank of a rectangular matrix at the tol_sing threshold."""
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.tol_sing * s[0]))


def orthant_image_degeneracy(A, S: Signature, tol: Tolerances = DEFAULT_TOL) -> str:
    """How F_A degenerates on the orthant of S.

    "simplicial" when I - A S is invertible (the orthant maps to a pointed
    simplicial cone), "pointed_lowdim" when singular but the kernel misses
    the orthant, "line_detected" when a kernel vector lies in the orthant
    (so the image contains a line through the origin).
    """
    A = as_square_matrix(A)
    M = np.eye(A.shape[0]) - A * S.as_vector()[None, :]
    if det_sign(M, tol) != 0:
        return SIMPLICIAL
    return LINE_DETECTED if kernel_meets_orthant(M, S, tol) else POINTED_LOWDIM
