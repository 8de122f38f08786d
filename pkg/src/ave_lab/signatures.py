"""Signature matrices and orthant combinatorics.

A signature is a diagonal matrix with entries +-1; it is identified with the
orthant ``{z : S z >= 0}``.  Enumeration walks all 2**n signatures in binary
counting order, which is intrinsically exponential, so a hard cap keeps
accidental misuse loud.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import CapExceededError
from .linalg import DEFAULT_MAX_N, DEFAULT_TOL, Tolerances, as_square_matrix, as_vector, vec_norm_inf

__all__ = [
    "OrthantMembership",
    "Signature",
    "apply_left",
    "enumerate_signatures",
    "orthant_membership",
    "signatures_of",
]


@dataclass(frozen=True)
class Signature:
    """Diagonal +-1 matrix, stored as the tuple of its diagonal entries."""

    diag: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.diag) < 1 or any(d not in (-1, 1) for d in self.diag):
            raise ValueError(f"signature entries must be +-1, got {self.diag!r}")

    @property
    def n(self) -> int:
        return len(self.diag)

    def as_vector(self) -> np.ndarray:
        return np.array(self.diag, dtype=float)

    def matrix(self) -> np.ndarray:
        return np.diag(self.as_vector())

    @classmethod
    def from_string(cls, pattern: str) -> "Signature":
        try:
            return cls(tuple(1 if c == "+" else -1 if c == "-" else None for c in pattern))
        except ValueError:
            raise ValueError(f"signature pattern must consist of '+'/'-', got {pattern!r}") from None

    def __str__(self) -> str:
        return "".join("+" if d > 0 else "-" for d in self.diag)


@dataclass(frozen=True)
class OrthantMembership:
    inside: bool
    on_boundary: bool
    violating_index: int | None = None


def enumerate_signatures(n: int, max_n: int = DEFAULT_MAX_N) -> Iterator[Signature]:
    """Yield all 2**n signatures once, in binary counting order.

    Bit i of the counter controls position i, with +1 for a clear bit, so the
    first signature is all +1 and the last is all -1.  Raises
    CapExceededError for n above ``max_n``.
    """
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n > max_n:
        raise CapExceededError(
            f"enumerating signatures for n={n} means 2**{n} = {2 ** n} cases; "
            f"cap is {max_n} (raise max_n explicitly to override)"
        )
    for k in range(2 ** n):
        yield Signature(tuple(1 if not (k >> i) & 1 else -1 for i in range(n)))


def apply_left(S: Signature, A) -> np.ndarray:
    """Return S A, i.e. row i of A scaled by S.diag[i]."""
    A = as_square_matrix(A)
    if A.shape[0] != S.n:
        raise ValueError(f"signature length {S.n} does not match matrix size {A.shape[0]}")
    return S.as_vector()[:, None] * A


def orthant_membership(S: Signature, z, tol: Tolerances = DEFAULT_TOL) -> OrthantMembership:
    """Membership of z in the closed orthant of S, with boundary detection.

    z is inside when ``S.diag[i] * z[i] >= -tol_boundary * ||z||_inf`` for
    all i, and on the boundary when additionally some component vanishes at
    the same threshold.
    """
    z = as_vector(z, S.n)
    scale = vec_norm_inf(z)
    slack = tol.tol_boundary * scale
    signed = S.as_vector() * z
    violations = np.nonzero(signed < -slack)[0]
    if violations.size:
        return OrthantMembership(False, False, int(violations[0]))
    on_boundary = bool(np.any(np.abs(z) <= slack))
    return OrthantMembership(True, on_boundary, None)


def signatures_of(z, tol: Tolerances = DEFAULT_TOL) -> list[Signature]:
    """All signatures S with S z = |z| entrywise, up to ``tol_boundary``.

    Components within ``tol_boundary * ||z||_inf`` of zero admit both signs,
    so a vector with k such components has 2**k signatures.  The zero vector
    is refused since every signature would match.
    """
    z = np.asarray(z, dtype=float).reshape(-1)
    scale = vec_norm_inf(z)
    if scale == 0.0:
        raise ValueError("the zero vector has no meaningful signature")
    slack = tol.tol_boundary * scale
    choices = []
    for zi in z:
        if abs(zi) <= slack:
            choices.append((1, -1))
        else:
            choices.append((1,) if zi > 0 else (-1,))
    return [Signature(combo) for combo in itertools.product(*choices)]
