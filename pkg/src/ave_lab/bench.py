"""Random instance families and the property-suite drivers.

Families are deterministic per seed.  Suites aggregate pass/fail counts and
serialize every failing instance with enough data (matrix entries, right-hand
side, seeds) to replay the failure bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ave import PiecewiseLinearMap, degree
from .compare import maxmin_over_nonneg, maxmin_over_sphere
from .errors import NumericError
from .linalg import DEFAULT_TOL, Tolerances, as_square_matrix
from .spectrum import aligning_spectrum, rho_a, rho_sign_real, simplicity

__all__ = [
    "FAMILY_KINDS",
    "FamilySpec",
    "SUITE_NAMES",
    "generate",
    "perron_root",
    "run_suite",
]

FAMILY_KINDS = ("gaussian", "nonneg", "positive_simple", "scaled_to_rho_a")

REPORT_SCHEMA = "ave-lab/1"


@dataclass(frozen=True)
class FamilySpec:
    """A reproducible batch of random test matrices."""

    kind: str
    n: int
    count: int
    target: float | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; choose from {FAMILY_KINDS}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.kind in ("scaled_to_rho_a", "positive_simple"):
            if self.target is None or self.target <= 0:
                raise ValueError(f"family {self.kind!r} needs a positive target")


def perron_root(A, tol: float = 1e-12, max_iter: int = 20000) -> tuple[float, np.ndarray]:
    """Dominant eigenpair of a nonnegative matrix by plain power iteration.

    Deliberately independent of the signature/LAPACK machinery so it can act
    as an oracle against it.  Starts from the all-ones vector, which cannot
    be orthogonal to the Perron vector of a nonnegative matrix.
    """
    A = as_square_matrix(A)
    if np.min(A) < 0:
        raise ValueError("power iteration oracle expects a nonnegative matrix")
    x = np.ones(A.shape[0])
    x /= np.linalg.norm(x)
    lam = 0.0
    for _ in range(max_iter):
        y = A @ x
        norm = float(np.linalg.norm(y))
        if norm == 0.0:
            return 0.0, x
        x_new = y / norm
        lam = float(x_new @ A @ x_new)
        if float(np.linalg.norm(A @ x_new - lam * x_new)) < tol * max(1.0, abs(lam)):
            return lam, x_new
        x = x_new
    return lam, x


def generate(spec: FamilySpec, tol: Tolerances = DEFAULT_TOL, skip_budget: int = 50) -> list[np.ndarray]:
    """Draw spec.count matrices of the requested family, deterministically.

    ``scaled_to_rho_a`` rescales each gaussian draw to the target aligning
    spectral radius, skipping (and counting) draws whose radius is below
    1e-8; ``positive_simple`` rescales positive draws to the target Perron
    root and keeps only instances certified simple with second aligning
    value below 1.  Exhausting ``skip_budget * count`` draws is an error.
    """
    rng = np.random.default_rng(spec.seed)
    out: list[np.ndarray] = []
    attempts = 0
    budget = skip_budget * spec.count
    while len(out) < spec.count:
        if attempts >= budget:
            raise NumericError(
                f"family {spec.kind!r} exhausted its skip budget "
                f"({budget} draws for {spec.count} accepted instances)"
            )
        attempts += 1
        if spec.kind == "gaussian":
            out.append(rng.standard_normal((spec.n, spec.n)))
        elif spec.kind == "nonneg":
            out.append(rng.random((spec.n, spec.n)))
        elif spec.kind == "scaled_to_rho_a":
            draw = rng.standard_normal((spec.n, spec.n))
            radius = rho_a(draw, tol)
            if radius < 1e-8:
                continue
            out.append(draw * (spec.target / radius))
        else:  # positive_simple
            draw = 1.0 - rng.random((spec.n, spec.n))  # entries in (0, 1]
            root, _ = perron_root(draw)
            if root < 1e-8:
                continue
            cand = draw * (spec.target / root)
            spectrum = aligning_spectrum(cand, tol)
            values = spectrum.values(tol)
            if not values or abs(values[0] - spec.target) > 1e-6:
                continue
            second = values[1] if len(values) > 1 else 0.0
            if second >= 1.0:
                continue
            if not simplicity(cand, tol).is_simple:
                continue
            out.append(cand)
    return out


def _record(A: np.ndarray, **extra) -> dict:
    rec = {"n": int(A.shape[0]), "rows": A.tolist()}
    rec.update(extra)
    return rec


def _suite_odd_count(seed: int, tol: Tolerances, counts) -> dict:
    """Rescaled gaussian instances must show odd solution counts with
    orientation sum exactly 1 on every regular right-hand side."""
    matrix_count, rhs_per_matrix = counts
    failures = []
    regular_trials = 0
    matrices = 0
    sizes = (2, 3, 4)
    per = [matrix_count // len(sizes)] * len(sizes)
    per[-1] += matrix_count - sum(per)
    for n, many in zip(sizes, per):
        family = FamilySpec("scaled_to_rho_a", n=n, count=many, target=0.9, seed=seed + n)
        for idx, A in enumerate(generate(family, tol)):
            matrices += 1
            pwl = PiecewiseLinearMap(A, tol)
            rng = np.random.default_rng(seed * 1_000_003 + n * 1009 + idx)
            for _ in range(rhs_per_matrix):
                b = rng.standard_normal(n)
                b /= np.linalg.norm(b)
                report = pwl.solve_report(b)
                if not report.b_regular:
                    continue
                regular_trials += 1
                count = len(report.solutions)
                osum = sum(s.orientation for s in report.solutions)
                if count % 2 == 0 or osum != 1:
                    failures.append(
                        _record(A, b=b.tolist(), solution_count=count, orientation_sum=osum)
                    )
    return {
        "total": regular_trials,
        "matrices": matrices,
        "passed": regular_trials - len(failures),
        "failed": len(failures),
        "failures": failures,
    }


def _suite_mod2_switch(seed: int, tol: Tolerances, counts) -> dict:
    """Certified simple positive matrices scaled past the degeneracy must
    have even degree; in the plane the degree must vanish outright."""
    per_n = counts
    failures = []
    total = 0
    for n in (2, 3):
        family = FamilySpec("positive_simple", n=n, count=per_n, target=1.2, seed=seed + 10 * n)
        for idx, A in enumerate(generate(family, tol)):
            total += 1
            report = degree(A, tol, seed=seed + idx)
            ok = report.degree is not None and report.degree % 2 == 0
            if ok and n == 2:
                ok = report.degree == 0
            if not ok:
                failures.append(_record(A, degree=report.degree, reason=report.reason))
    return {"total": total, "passed": total - len(failures), "failed": len(failures), "failures": failures}


def _suite_perron_coincide(seed: int, tol: Tolerances, counts) -> dict:
    """On nonnegative matrices both spectral radii and both max-min
    functionals must agree with the power-iteration Perron root."""
    count, restarts = counts
    failures = []
    total = 0
    sizes = (2, 3, 4)
    per = [count // len(sizes)] * len(sizes)
    per[-1] += count - sum(per)
    for n, many in zip(sizes, per):
        family = FamilySpec("nonneg", n=n, count=many, seed=seed + 100 * n)
        for idx, A in enumerate(generate(family, tol)):
            total += 1
            root, _ = perron_root(A)
            ra = rho_a(A, tol)
            rR = rho_sign_real(A, tol)
            lhs = maxmin_over_sphere(A, tol, seed=seed + idx, restarts=restarts).value
            rhs = maxmin_over_nonneg(A, tol, seed=seed + idx, restarts=restarts).value
            ok = (
                abs(ra - rR) <= 1e-7
                and abs(ra - root) <= 1e-7
                and abs(lhs - rR) <= 1e-3
                and abs(rhs - ra) <= 1e-3
            )
            if not ok:
                failures.append(
                    _record(A, perron=root, rho_a=ra, rho_R=rR, lhs=lhs, rhs=rhs)
                )
    return {"total": total, "passed": total - len(failures), "failed": len(failures), "failures": failures}


def _suite_degree_conjecture(seed: int, tol: Tolerances, counts) -> dict:
    """Diagnostic sweep pairing the aligning radius with the observed degree.

    Records observations only; the degree/radius correspondence beyond the
    proven directions is an open question and is asserted nowhere.
    """
    count = counts
    observations = []
    for n in (2, 3):
        family = FamilySpec("gaussian", n=n, count=count // 2, seed=seed + n)
        for idx, A in enumerate(generate(family, tol)):
            report = degree(A, tol, seed=seed + idx)
            observations.append(
                _record(A, rho_a=rho_a(A, tol), degree=report.degree, reason=report.reason)
            )
    return {
        "total": len(observations),
        "passed": len(observations),
        "failed": 0,
        "failures": [],
        "observations": observations,
    }


_SUITES = {
    "odd-count": (_suite_odd_count, (200, 50)),
    "mod2-switch": (_suite_mod2_switch, 50),
    "perron-coincide": (_suite_perron_coincide, (50, 16)),
    "degree-conjecture": (_suite_degree_conjecture, 20),
}

SUITE_NAMES = tuple(_SUITES)


def run_suite(name: str, seed: int = 42, tol: Tolerances = DEFAULT_TOL, _counts=None) -> dict:
    """Run a named property suite and return its aggregate report.

    ``_counts`` shrinks the instance counts for quick smoke runs; the
    defaults are the sizes the acceptance checks rely on.
    """
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(_SUITES)}")
    fn, default_counts = _SUITES[name]
    body = fn(seed, tol, _counts if _counts is not None else default_counts)
    report = {"schema": REPORT_SCHEMA, "suite": name, "seed": seed}
    report.update(body)
    return report
