"""The linear homotopy H_A(z, t) = z - t A |z|.

Properness fails exactly at the reciprocals of the positive aligning values;
between consecutive breakpoints the mapping degree is constant.  For 2x2
matrices the image of the unit circle can be traced directly and its winding
number about the origin recovers the degree, which gives a cheap independent
cross-check in the plane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ave import degree, eval_F
from .errors import DimensionError
from .linalg import DEFAULT_MAX_N, DEFAULT_TOL, Tolerances, as_square_matrix, as_vector
from .spectrum import aligning_spectrum

__all__ = [
    "CircleTrace",
    "PropernessBreakpoints",
    "circle_trace",
    "degree_profile",
    "eval_H",
    "properness_breakpoints",
    "winding_number",
]


@dataclass(frozen=True)
class PropernessBreakpoints:
    """Ascending reciprocals 1/lambda of the positive aligning values."""

    breakpoints: tuple[float, ...]
    has_zero_aligning_value: bool


@dataclass(frozen=True)
class CircleTrace:
    """Image of the unit circle under H_A(., t), sampled at equal angles."""

    t: float
    thetas: np.ndarray  # strictly increasing in [0, 2*pi)
    points: np.ndarray  # (m, 2) unit-circle sample points
    images: np.ndarray  # (m, 2) their images
    closed: bool = True

    @property
    def samples(self) -> list[tuple[float, np.ndarray]]:
        return [(float(th), img) for th, img in zip(self.thetas, self.images)]


def eval_H(A, z, t: float) -> np.ndarray:
    """Evaluate z - t A |z| (t >= 0)."""
    if t < 0:
        raise ValueError(f"homotopy parameter must be >= 0, got {t}")
    A = as_square_matrix(A)
    z = as_vector(z, A.shape[0])
    return z - t * (A @ np.abs(z))


def properness_breakpoints(
    A, tol: Tolerances = DEFAULT_TOL, max_n: int = DEFAULT_MAX_N
) -> PropernessBreakpoints:
    """Breakpoints 1/lambda for strictly positive aligning values lambda.

    A zero aligning value contributes no finite breakpoint (1/0 is treated
    as infinity) and is reported through the flag instead.
    """
    spec = aligning_spectrum(A, tol, max_n=max_n)
    values = spec.values(tol)
    has_zero = any(v <= tol.tol_dedupe for v in values)
    points = sorted(1.0 / v for v in values if v > tol.tol_dedupe)
    return PropernessBreakpoints(tuple(points), has_zero)


def degree_profile(
    A,
    ts,
    tol: Tolerances = DEFAULT_TOL,
    seed: int = 42,
    trials: int = 7,
    max_n: int = DEFAULT_MAX_N,
) -> list[tuple[float, int | None]]:
    """Degree of z -> z - t A |z| for each t; None where the map is degenerate."""
    A = as_square_matrix(A)
    out: list[tuple[float, int | None]] = []
    for t in ts:
        if t < 0:
            raise ValueError(f"homotopy parameter must be >= 0, got {t}")
        report = degree(t * A, tol, seed=seed, trials=trials, max_n=max_n)
        out.append((float(t), report.degree))
    return out


def circle_trace(A, t: float, m: int = 360, tol: Tolerances = DEFAULT_TOL) -> CircleTrace:
    """Sample the image of the unit circle under H_A(., t) at m equal angles."""
    A = as_square_matrix(A)
    if A.shape[0] != 2:
        raise DimensionError(f"circle traces need a 2x2 matrix, got n={A.shape[0]}")
    if m < 16:
        raise ValueError(f"need at least 16 samples, got {m}")
    if t < 0:
        raise ValueError(f"homotopy parameter must be >= 0, got {t}")
    thetas = 2.0 * np.pi * np.arange(m) / m
    points = np.column_stack([np.cos(thetas), np.sin(thetas)])
    images = points - t * np.abs(points) @ A.T
    return CircleTrace(t=float(t), thetas=thetas, points=points, images=images)


def winding_number(trace: CircleTrace, tol: Tolerances = DEFAULT_TOL) -> int | None:
    """Winding number of the traced image curve about the origin.

    Accumulates wrapped angle increments around the closed curve.  Returns
    None when a sample comes too close to the origin or when the accumulated
    angle is not close to an integer multiple of 2*pi (both indicate a
    degenerate parameter value).
    """
    radii = np.linalg.norm(trace.images, axis=1)
    guard = tol.tol_boundary * max(1.0, float(np.max(radii)))
    if float(np.min(radii)) <= guard:
        return None
    angles = np.arctan2(trace.images[:, 1], trace.images[:, 0])
    deltas = np.diff(np.concatenate([angles, angles[:1]]))
    deltas = (deltas + np.pi) % (2.0 * np.pi) - np.pi
    total = float(np.sum(deltas)) / (2.0 * np.pi)
    nearest = round(total)
    if abs(total - nearest) >= 0.01:
        return None
    return int(nearest)
