"""Aligning spectrum, aligning spectral radius and sign-real spectral radius.

An aligning value of A is a lambda >= 0 that is an eigenvalue of S A for some
signature S with an eigenvector v in the closed positive orthant; S v is the
corresponding aligning vector.  Both radii are computed by exhaustive
signature enumeration, which is intentional: the underlying decision problems
are hard, and at desk scale 2**n enumeration is the honest tool.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_MAX_N,
    DEFAULT_TOL,
    Tolerances,
    as_square_matrix,
    kernel_basis,
    mat_norm_inf,
    normalize_inf,
    real_eigenpairs,
    vec_norm_inf,
)
from .signatures import Signature, apply_left, enumerate_signatures

__all__ = [
    "AligningPair",
    "AligningSpectrum",
    "SimplicityReport",
    "aligning_spectrum",
    "is_degenerate",
    "principal_submatrix",
    "rho_a",
    "rho_sign_real",
    "simplicity",
]

# Reason codes for SimplicityReport.
MULTIPLE_RAYS = "multiple_rays"
BOUNDARY_RAY = "boundary_ray"
NON_SIMPLE_EIGENVALUE = "non_simple_eigenvalue"
EMPTY_POSITIVE_SPECTRUM = "empty_positive_spectrum"


@dataclass(frozen=True)
class AligningPair:
    """One aligning value with its signature, eigenvector and aligning vector.

    ``eigvec`` is the nonnegative eigenvector of S A (infinity norm 1) and
    ``aligning_vector`` is S applied to it.  ``interior`` records whether the
    eigenvector is strictly positive; ``simple_ev`` whether the value is a
    simple eigenvalue of S A.
    """

    value: float
    signature: Signature
    eigvec: np.ndarray
    aligning_vector: np.ndarray
    interior: bool
    simple_ev: bool


@dataclass(frozen=True)
class AligningSpectrum:
    """Deduplicated aligning pairs, sorted by value descending."""

    pairs: tuple[AligningPair, ...]
    deduped: bool
    warnings: tuple[str, ...] = ()

    def values(self, tol: Tolerances = DEFAULT_TOL) -> list[float]:
        """Distinct aligning values, descending."""
        out: list[float] = []
        for p in self.pairs:
            if not out or abs(out[-1] - p.value) > tol.tol_dedupe:
                out.append(p.value)
        return out


@dataclass(frozen=True)
class SimplicityReport:
    is_simple: bool
    reasons: tuple[str, ...]


def _nonneg_representative(v: np.ndarray, tol: Tolerances) -> np.ndarray | None:
    """The nonnegative orientation of v, or None if both orientations mix signs.

    Expects v already normalized by ``normalize_inf`` (largest entry +1), so
    only that orientation can qualify.
    """
    if float(np.min(v)) >= -tol.tol_nonneg:
        return v
    return None


def _count_near(values: np.ndarray, target: float, tol: Tolerances) -> int:
    """How many (possibly complex) values lie within tol_dedupe of target."""
    return int(np.sum(np.abs(values - target) <= tol.tol_dedupe))


def _project_onto_span(basis: list[np.ndarray], w: np.ndarray) -> np.ndarray:
    """Orthogonal projection of w onto span(basis); basis is orthonormal."""
    B = np.column_stack(basis)
    return B @ (B.T @ w)


def aligning_spectrum(A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> AligningSpectrum:
    """Aligning spectrum of A by exhaustive signature enumeration.

    For every signature S, every real eigenpair (lambda, v) of S A with
    lambda >= -tol_residual (clamped to 0) and v nonnegative up to
    ``tol_nonneg`` contributes a pair.  Eigenvalues of higher geometric
    multiplicity are additionally probed through the kernel basis and the
    projection of the all-ones vector onto the eigenspace; a probe that can
    neither exhibit a nonnegative eigenvector nor rule one out is recorded as
    a warning.  Pairs agreeing in value and aligning ray are merged.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    scale = max(1.0, mat_norm_inf(A))
    raw: list[AligningPair] = []
    warnings: list[str] = []

    for sig in enumerate_signatures(n, max_n=max_n):
        M = apply_left(sig, A)
        pairs = real_eigenpairs(M, tol)
        all_values = np.linalg.eigvals(M)
        sig_vec = sig.as_vector()

        emitted_values: list[float] = []

        def emit(lam: float, v: np.ndarray) -> None:
            cand = _nonneg_representative(v, tol)
            if cand is None:
                return
            lam_c = max(lam, 0.0)
            simple = _count_near(all_values, lam, tol) == 1
            raw.append(
                AligningPair(
                    value=lam_c,
                    signature=sig,
                    eigvec=cand,
                    aligning_vector=sig_vec * cand,
                    interior=float(np.min(cand)) > tol.tol_boundary,
                    simple_ev=simple,
                )
            )
            emitted_values.append(lam)

        for pair in pairs:
            if pair.value < -tol.tol_residual * scale:
                continue
            emit(pair.value, pair.vector)

        # Probe eigenvalues of geometric multiplicity >= 2: the eigenspace may
        # meet the positive orthant even if no returned basis vector does.
        seen_groups: list[float] = []
        for pair in pairs:
            lam = pair.value
            if lam < -tol.tol_residual * scale:
                continue
            if any(abs(lam - g) <= tol.tol_dedupe for g in seen_groups):
                continue
            seen_groups.append(lam)
            if sum(1 for p in pairs if abs(p.value - lam) <= tol.tol_dedupe) < 2:
                continue
            basis = kernel_basis(M - lam * np.eye(n), tol)
            if len(basis) < 2:
                continue
            probes = list(basis) + [_project_onto_span(basis, np.ones(n))]
            found = any(abs(ev - lam) <= tol.tol_dedupe for ev in emitted_values)
            for probe in probes:
                if vec_norm_inf(probe) <= tol.tol_sing:
                    continue
                w = normalize_inf(probe)
                if _nonneg_representative(w, tol) is None:
                    continue
                if vec_norm_inf(M @ w - lam * w) > tol.tol_residual * scale:
                    continue
                emit(lam, w)
                found = True
            if not found:
                warnings.append(
                    f"multiplicity probe inconclusive for signature {sig}, eigenvalue "
                    f"{lam:.9g}: eigenspace of dimension {len(basis)} may intersect "
                    f"the positive orthant undetected"
                )

    deduped: list[AligningPair] = []
    for p in raw:
        merged = False
        for q in deduped:
            if (
                abs(p.value - q.value) <= tol.tol_dedupe
                and vec_norm_inf(p.aligning_vector - q.aligning_vector) <= tol.tol_dedupe
            ):
                merged = True
                break
        if not merged:
            deduped.append(p)

    deduped.sort(key=lambda p: (-p.value, tuple(p.aligning_vector)))
    return AligningSpectrum(pairs=tuple(deduped), deduped=True, warnings=tuple(warnings))


def rho_a(A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> float:
    """Aligning spectral radius: the largest aligning value (0 if none found)."""
    spec = aligning_spectrum(A, tol, max_n=max_n)
    return spec.pairs[0].value if spec.pairs else 0.0


def _real_eigenvalues(M: np.ndarray, tol: Tolerances) -> list[float]:
    """Values of the real spectrum of M, conjugate pairs within tol collapsed."""
    scale = max(1.0, mat_norm_inf(M))
    values = np.linalg.eigvals(M).astype(np.complex128, copy=False)
    out = []
    for lam in values:
        if abs(lam.imag) > tol.tol_im * scale:
            continue
        if lam.imag < 0.0:
            continue
        out.append(float(lam.real))
    return out


def rho_sign_real(A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> float:
    """Sign-real spectral radius: max over signatures S of the largest
    absolute real eigenvalue of S A."""
    A = as_square_matrix(A)
    best = 0.0
    for sig in enumerate_signatures(A.shape[0], max_n=max_n):
        for lam in _real_eigenvalues(apply_left(sig, A), tol):
            best = max(best, abs(lam))
    return best


def is_degenerate(A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> bool:
    """True iff some aligning value of A lies within ``tol_dedupe`` of 1.

    Exactly then the map z -> z - A|z| collapses a ray to the origin.
    """
    spec = aligning_spectrum(A, tol, max_n=max_n)
    return any(abs(p.value - 1.0) <= tol.tol_dedupe for p in spec.pairs)


def simplicity(A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N) -> SimplicityReport:
    """Classify whether A is simple: a unique aligning ray at the aligning
    spectral radius, lying in an orthant interior, with the radius a simple
    eigenvalue of the signed matrix."""
    spec = aligning_spectrum(A, tol, max_n=max_n)
    if not spec.pairs:
        return SimplicityReport(False, (EMPTY_POSITIVE_SPECTRUM,))
    top_value = spec.pairs[0].value
    top = [p for p in spec.pairs if top_value - p.value <= tol.tol_dedupe]
    reasons: list[str] = []
    if len(top) > 1:
        reasons.append(MULTIPLE_RAYS)
    if not top[0].interior:
        reasons.append(BOUNDARY_RAY)
    if not top[0].simple_ev:
        reasons.append(NON_SIMPLE_EIGENVALUE)
    return SimplicityReport(not reasons, tuple(reasons))


def principal_submatrix(A, i: int) -> np.ndarray:
    """A with row and column i removed (0-based index)."""
    A = as_square_matrix(A)
    n = A.shape[0]
    if n < 2:
        raise ValueError("principal submatrices need n >= 2")
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for dimension {n}")
    return np.delete(np.delete(A, i, axis=0), i, axis=1)
