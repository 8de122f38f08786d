"""Dense linear algebra kernel for small real matrices.

Contract-checked wrappers around LAPACK (through numpy): real eigenpairs,
linear solves with explicit singularity signalling, numerical kernels, ranks
and determinant signs.  Everything operates on plain float ndarrays and is
pure, so all functions are safe to call concurrently.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import NumericError

__all__ = [
    "DEFAULT_MAX_N",
    "DEFAULT_TOL",
    "EigenPair",
    "Tolerances",
    "as_square_matrix",
    "as_vector",
    "det_sign",
    "kernel_basis",
    "mat_norm_inf",
    "normalize_inf",
    "rank",
    "real_eigenpairs",
    "solve_linear",
    "vec_norm_inf",
]

# Signature enumeration is 2**n; anything above this needs an explicit override.
DEFAULT_MAX_N = 20


@dataclass(frozen=True)
class Tolerances:
    """Numeric thresholds used throughout the package.

    All values must lie in [0, 1).  Defaults are sized for double precision
    at desk scale (n up to ~16):

    * ``tol_residual``: eigen/solve residual bound, relative to max(1, norm).
    * ``tol_im``: maximal imaginary part for an eigenvalue to count as real.
    * ``tol_nonneg``: slack when testing entrywise nonnegativity of vectors.
    * ``tol_boundary``: slack for orthant membership and zero components.
    * ``tol_dedupe``: distance below which values/rays/points are merged.
    * ``tol_sing``: relative singular-value threshold for rank decisions.
    """

    tol_residual: float = 1e-9
    tol_im: float = 1e-9
    tol_nonneg: float = 1e-9
    tol_boundary: float = 1e-9
    tol_dedupe: float = 1e-7
    tol_sing: float = 1e-11

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not 0.0 <= value < 1.0:
                raise ValueError(f"{f.name} must lie in [0, 1), got {value!r}")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class EigenPair:
    """Real eigenvalue with a real eigenvector of unit infinity norm."""

    value: float
    vector: np.ndarray
    residual: float


def as_square_matrix(A) -> np.ndarray:
    """Validate and return A as a finite, square float array (n >= 1)."""
    M = np.asarray(A, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix entries must be finite")
    return M


def as_vector(b, n: int) -> np.ndarray:
    v = np.asarray(b, dtype=float).reshape(-1)
    if v.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def mat_norm_inf(M: np.ndarray) -> float:
    return float(np.max(np.sum(np.abs(M), axis=1)))


def vec_norm_inf(v: np.ndarray) -> float:
    return float(np.max(np.abs(v)))


def normalize_inf(v: np.ndarray) -> np.ndarray:
    """Scale v to infinity norm 1 and flip so its largest entry is positive.

    The sign convention (first entry of maximal magnitude made positive)
    keeps nonnegativity tests and deduplication deterministic.
    """
    a = np.abs(v)
    m = float(a.max())
    if m == 0.0:
        raise ValueError("cannot normalize the zero vector")
    w = v / m
    if w[int(np.argmax(a))] < 0.0:
        w = -w
    return w + 0.0  # clear negative zeros


def _null_direction(M: np.ndarray) -> np.ndarray | None:
    """Right singular vector of the smallest singular value, or None."""
    try:
        _, _, vh = np.linalg.svd(M)
    except np.linalg.LinAlgError:
        return None
    return vh[-1]


def real_eigenpairs(A, tol: Tolerances = DEFAULT_TOL) -> list[EigenPair]:
    """All real eigenpairs of A, one vector per returned pair.

    An eigenvalue counts as real when its imaginary part is at most
    ``tol_im * max(1, ||A||_inf)``; a conjugate pair within that band is
    collapsed to a single real eigenvalue.  Every returned pair satisfies
    ``||A v - lambda v||_inf <= tol_residual * max(1, ||A||_inf)``;
    candidates that cannot be refined to meet the bound are dropped rather
    than returned as garbage.
    """
    A = as_square_matrix(A)
    n = A.shape[0]
    scale = max(1.0, mat_norm_inf(A))
    try:
        values, vectors = np.linalg.eig(A)
    except np.linalg.LinAlgError as exc:  # iteration cap inside LAPACK
        raise NumericError(f"eigensolver did not converge: {exc}") from exc
    values = values.astype(np.complex128, copy=False)

    pairs: list[EigenPair] = []
    for j in range(n):
        lam = values[j]
        if abs(lam.imag) > tol.tol_im * scale:
            continue
        if lam.imag < 0.0:
            continue  # keep one member of a collapsed conjugate pair
        lam_r = float(lam.real)
        col = np.asarray(vectors[:, j])
        re, im = np.real(col), np.imag(col)
        v = re if np.max(np.abs(re)) >= np.max(np.abs(im)) else im
        if not np.any(v):
            continue
        v = normalize_inf(v)
        residual = vec_norm_inf(A @ v - lam_r * v)
        if residual > tol.tol_residual * scale:
            refined = _null_direction(A - lam_r * np.eye(n))
            if refined is not None and np.any(refined):
                refined = normalize_inf(refined)
                r2 = vec_norm_inf(A @ refined - lam_r * refined)
                if r2 < residual:
                    v, residual = refined, r2
        if residual <= tol.tol_residual * scale:
            pairs.append(EigenPair(lam_r, v, residual))
    return pairs


def solve_linear(M, b, tol: Tolerances = DEFAULT_TOL) -> np.ndarray | None:
    """Solve M x = b, returning None when M is numerically singular.

    Singularity is decided at the relative threshold ``tol_sing`` on the
    singular values.  A returned x satisfies
    ``||M x - b||_inf <= tol_residual * max(1, ||M||_inf) * max(1, ||b||_inf)``;
    if refinement cannot reach that bound the system is treated as singular.
    """
    M = as_square_matrix(M)
    b = as_vector(b, M.shape[0])
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol.tol_sing * s[0]:
        return None
    x = np.linalg.solve(M, b)
    bound = tol.tol_residual * max(1.0, mat_norm_inf(M)) * max(1.0, vec_norm_inf(b))
    for _ in range(3):
        r = b - M @ x
        if vec_norm_inf(r) <= bound:
            return x
        x = x + np.linalg.solve(M, r)
    if vec_norm_inf(b - M @ x) <= bound:
        return x
    return None


def kernel_basis(M, tol: Tolerances = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical null space of M."""
    M = as_square_matrix(M)
    try:
        _, s, vh = np.linalg.svd(M)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc
    thresh = tol.tol_sing * (s[0] if s.size else 0.0)
    return [vh[i] for i in range(len(s)) if s[i] <= thresh]


def rank(M, tol: Tolerances = DEFAULT_TOL) -> int:
    """Numerical rank of M at the relative threshold ``tol_sing``."""
    M = as_square_matrix(M)
    s = np.linalg.svd(M, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol.tol_sing * s[0]))


def det_sign(M, tol: Tolerances = DEFAULT_TOL) -> int:
    """Sign of det M in {-1, 0, +1}; 0 when M is singular at ``tol_sing``."""
    M = as_square_matrix(M)
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol.tol_sing * s[0]:
        return 0
    sign, _ = np.linalg.slogdet(M)
    return int(sign)
