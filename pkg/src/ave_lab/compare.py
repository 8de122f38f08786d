"""Max-min quotient functionals over the sphere and the nonnegative orthant.

The functional min over nonzero components of |(Ax)_i / x_i| attains the
sign-real spectral radius when maximized over all of R^n and relates to the
aligning spectral radius when maximized over the nonnegative orthant.  The
functional is piecewise smooth but far from concave, so both maximizations
use seeded multi-start pattern search with eigenvector-derived warm starts;
results are certified lower bounds, never claimed global optima.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DEFAULT_MAX_N,
    DEFAULT_TOL,
    Tolerances,
    as_square_matrix,
    real_eigenpairs,
    vec_norm_inf,
)
from .signatures import apply_left, enumerate_signatures
from .spectrum import aligning_spectrum, rho_a, rho_sign_real

__all__ = [
    "CoincidenceReport",
    "MaxMinResult",
    "coincidence_report",
    "maxmin_over_nonneg",
    "maxmin_over_sphere",
    "quotient_functional",
]


@dataclass(frozen=True)
class MaxMinResult:
    value: float
    argmax: np.ndarray
    restricted_nonneg: bool
    iterations: int
    best_curve: tuple[float, ...]  # best-so-far after each restart


@dataclass(frozen=True)
class CoincidenceReport:
    rho_a: float
    rho_R: float
    lhs: float  # max-min over the sphere
    rhs: float  # max-min over the nonnegative orthant
    coincide_spectra: bool
    coincide_functionals: bool
    rhs_interior: float  # diagnostic: strictly positive vectors, all indices count


def quotient_functional(A, x, tol: Tolerances = DEFAULT_TOL) -> float:
    """min over components with |x_i| > tol_boundary * ||x||_inf of |(Ax)_i / x_i|."""
    A = as_square_matrix(A)
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape != (A.shape[0],):
        raise ValueError(f"vector length {x.shape} does not match matrix size {A.shape[0]}")
    scale = vec_norm_inf(x)
    if scale == 0.0:
        raise ValueError("quotient functional is undefined at the zero vector")
    mask = np.abs(x) > tol.tol_boundary * scale
    return float(np.min(np.abs((A @ x)[mask] / x[mask])))


def _batch_quotient(A: np.ndarray, X: np.ndarray, tol_rel: float) -> np.ndarray:
    """quotient_functional column-wise; -inf marks unusable (zero) columns."""
    absX = np.abs(X)
    colmax = absX.max(axis=0)
    ok = colmax > 0.0
    mask = absX > tol_rel * np.where(ok, colmax, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.abs(A @ X) / absX
    vals = np.min(np.where(mask, ratios, np.inf), axis=0)
    return np.where(ok, vals, -np.inf)


def _pattern_search(
    A: np.ndarray,
    x0: np.ndarray,
    tol: Tolerances,
    nonneg: bool,
    max_iter: int,
    shrink: float,
    tol_rel: float | None = None,
    floor: float = 0.0,
) -> tuple[np.ndarray, float, int]:
    """Coordinate pattern search maximizing the quotient functional.

    The functional is scale-invariant, so iterates are kept on the unit
    sphere; in nonnegative mode every candidate is clipped to at least
    ``floor`` (0 for the closed orthant, positive for the interior
    diagnostic).  Returns (point, value, iterations used).
    """
    n = A.shape[0]
    if tol_rel is None:
        tol_rel = tol.tol_boundary
    x = np.clip(x0, floor, None) if nonneg else np.array(x0, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm == 0.0:
        return x0, -np.inf, 0
    x = x / norm
    f = _batch_quotient(A, x[:, None], tol_rel)[0]
    h = 0.5
    eye = np.eye(n)
    used = 0
    for it in range(max_iter):
        used = it + 1
        if h < 1e-13:
            break
        X = np.concatenate([x[:, None] + h * eye, x[:, None] - h * eye], axis=1)
        if nonneg:
            X = np.clip(X, floor, None)
        norms = np.linalg.norm(X, axis=0)
        nonzero = norms > 0.0
        X[:, nonzero] = X[:, nonzero] / norms[nonzero]
        vals = _batch_quotient(A, X, tol_rel)
        vals[~nonzero] = -np.inf
        j = int(np.argmax(vals))
        if vals[j] > f + 1e-15:
            x, f = X[:, j], float(vals[j])
        else:
            h *= shrink
    return x, float(f), used


def _sphere_starts(A: np.ndarray, tol: Tolerances, max_n: int, cap: int) -> list[np.ndarray]:
    """Eigenvector starts sorted by |eigenvalue| descending, largest first."""
    n = A.shape[0]
    found: list[tuple[float, np.ndarray]] = []
    for sig in enumerate_signatures(n, max_n=max_n):
        for pair in real_eigenpairs(apply_left(sig, A), tol):
            found.append((abs(pair.value), pair.vector))
    found.sort(key=lambda t: -t[0])
    starts: list[np.ndarray] = []
    for _, v in found:
        if len(starts) >= cap:
            break
        if any(
            vec_norm_inf(v - s) <= 1e-9 or vec_norm_inf(v + s) <= 1e-9 for s in starts
        ):
            continue
        starts.append(v)
    return starts


def _nonneg_starts(A: np.ndarray, tol: Tolerances, max_n: int, cap: int) -> list[np.ndarray]:
    """Aligning eigenvectors as warm starts, largest aligning value first."""
    spec = aligning_spectrum(A, tol, max_n=max_n)
    starts: list[np.ndarray] = []
    for p in spec.pairs:
        if len(starts) >= cap:
            break
        if any(vec_norm_inf(p.eigvec - s) <= 1e-9 for s in starts):
            continue
        starts.append(p.eigvec)
    return starts


def _multistart(
    A: np.ndarray,
    warm: list[np.ndarray],
    nonneg: bool,
    tol: Tolerances,
    seed: int,
    restarts: int,
    max_iter: int,
    shrink: float,
    tol_rel: float | None = None,
    floor: float = 0.0,
) -> tuple[np.ndarray, float, int, list[float]]:
    n = A.shape[0]
    rng = np.random.default_rng(seed)
    starts = list(warm[:restarts])
    if len(starts) < restarts:
        starts.append(np.ones(n))
    while len(starts) < restarts:
        draw = rng.standard_normal(n)
        starts.append(np.abs(draw) if nonneg else draw)
    best_x, best_f, total = None, -np.inf, 0
    curve: list[float] = []
    for s in starts:
        x, f, used = _pattern_search(A, s, tol, nonneg, max_iter, shrink, tol_rel, floor)
        total += used
        if f > best_f:
            best_x, best_f = x, f
        curve.append(best_f)
    return best_x, best_f, total, curve


def maxmin_over_sphere(
    A,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 42,
    restarts: int = 64,
    max_iter: int = 500,
    shrink: float = 0.5,
    max_n: int = DEFAULT_MAX_N,
) -> MaxMinResult:
    """Best found value of the quotient functional over the unit sphere.

    Warm starts include every real eigenvector of every signed matrix S A
    (the known maximizers), so on instances where the optimum is attained at
    such a point the reported value reaches it immediately.  The orthant-
    restricted searches are also polled since the orthant is a subset of the
    sphere's domain; this keeps the nonnegative result a true lower bound of
    this one.
    """
    A = as_square_matrix(A)
    warm = _sphere_starts(A, tol, max_n, cap=max(1, restarts // 2))
    x1, f1, it1, curve1 = _multistart(A, warm, False, tol, seed, restarts, max_iter, shrink)
    warm_nn = _nonneg_starts(A, tol, max_n, cap=max(1, restarts // 2))
    x2, f2, it2, curve2 = _multistart(A, warm_nn, True, tol, seed, restarts, max_iter, shrink)
    if f2 > f1:
        x1, f1 = x2, f2
    curve = list(np.maximum.accumulate(np.array(curve1 + curve2)))
    return MaxMinResult(
        value=float(f1),
        argmax=x1,
        restricted_nonneg=False,
        iterations=it1 + it2,
        best_curve=tuple(float(c) for c in curve),
    )


def maxmin_over_nonneg(
    A,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 42,
    restarts: int = 64,
    max_iter: int = 500,
    shrink: float = 0.5,
    max_n: int = DEFAULT_MAX_N,
) -> MaxMinResult:
    """Best found value of the quotient functional over the closed
    nonnegative orthant (candidates are clipped into the orthant)."""
    A = as_square_matrix(A)
    warm = _nonneg_starts(A, tol, max_n, cap=max(1, restarts // 2))
    x, f, iters, curve = _multistart(A, warm, True, tol, seed, restarts, max_iter, shrink)
    return MaxMinResult(
        value=float(f),
        argmax=x,
        restricted_nonneg=True,
        iterations=iters,
        best_curve=tuple(float(c) for c in curve),
    )


def coincidence_report(
    A,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 42,
    restarts: int = 64,
    functional_band: float = 1e-3,
    max_n: int = DEFAULT_MAX_N,
) -> CoincidenceReport:
    """Both spectral radii next to both max-min values.

    ``coincide_spectra`` compares the radii at a tight relative tolerance;
    ``coincide_functionals`` compares the two best-found functional values
    within ``functional_band``, which is all the lower-bound semantics of the
    optimizer supports.  ``rhs_interior`` additionally reports the search
    restricted to strictly positive vectors where every component counts in
    the min; it is a diagnostic for the boundary-vector convention and is
    asserted nowhere.
    """
    A = as_square_matrix(A)
    ra = rho_a(A, tol, max_n=max_n)
    rR = rho_sign_real(A, tol, max_n=max_n)
    sphere = maxmin_over_sphere(A, tol, seed=seed, restarts=restarts, max_n=max_n)
    nonneg = maxmin_over_nonneg(A, tol, seed=seed, restarts=restarts, max_n=max_n)

    warm = [np.clip(s, 1e-9, None) for s in _nonneg_starts(A, tol, max_n, cap=max(1, restarts // 2))]
    _, interior, _, _ = _multistart(
        A, warm, True, tol, seed, restarts, max_iter=500, shrink=0.5, tol_rel=0.0, floor=1e-9
    )

    return CoincidenceReport(
        rho_a=ra,
        rho_R=rR,
        lhs=sphere.value,
        rhs=nonneg.value,
        coincide_spectra=abs(ra - rR) <= 1e-6 * max(1.0, rR),
        coincide_functionals=abs(sphere.value - nonneg.value) <= functional_band,
        rhs_interior=float(interior),
    )
