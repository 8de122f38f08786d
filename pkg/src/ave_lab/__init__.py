"""Numerical laboratory for the absolute value equation z - A|z| = b.

Aligning spectra and the aligning spectral radius, the sign-real spectral
radius, exhaustive per-orthant solution enumeration, mapping degrees via
oriented preimage counts, linear homotopy traces, LCP reductions with Q- and
P-matrix checks, and max-min quotient functionals.
"""

from .ave import (
    AveSolution,
    DegreeReport,
    PiecewiseLinearMap,
    SolveReport,
    aligning_direction_check,
    degree,
    eval_F,
    ker_im_intersection_trivial,
    kernel_meets_orthant,
    orthant_image_degeneracy,
    solve_all,
)
from .bench import FamilySpec, generate, perron_root, run_suite
from .compare import (
    CoincidenceReport,
    MaxMinResult,
    coincidence_report,
    maxmin_over_nonneg,
    maxmin_over_sphere,
    quotient_functional,
)
from .errors import (
    AveLabError,
    CapExceededError,
    DimensionError,
    InconclusiveProbeError,
    NumericError,
    ParseError,
    SingularReductionError,
)
from .homotopy import (
    CircleTrace,
    PropernessBreakpoints,
    circle_trace,
    degree_profile,
    eval_H,
    properness_breakpoints,
    winding_number,
)
from .lcp import (
    LcpInstance,
    LcpSolution,
    QCheckReport,
    ave_to_lcp,
    lcp_solve_enumerative,
    p_matrix_check,
    q_check,
)
from .linalg import (
    DEFAULT_MAX_N,
    DEFAULT_TOL,
    EigenPair,
    Tolerances,
    det_sign,
    kernel_basis,
    rank,
    real_eigenpairs,
    solve_linear,
)
from .signatures import (
    OrthantMembership,
    Signature,
    apply_left,
    enumerate_signatures,
    orthant_membership,
    signatures_of,
)
from .spectrum import (
    AligningPair,
    AligningSpectrum,
    SimplicityReport,
    aligning_spectrum,
    is_degenerate,
    principal_submatrix,
    rho_a,
    rho_sign_real,
    simplicity,
)

__version__ = "0.1.0"
