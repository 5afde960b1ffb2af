"""Conformal Killing 2-forms on 4-dimensional metric Lie algebras.

Given a metric Lie algebra by structure constants on an orthonormal oriented
frame, the package computes the curvature decomposition (scalar part,
trace-free Ricci, self-dual and anti-self-dual Weyl blocks), builds the
curvature-coupled connections whose parallel sections are conformal Killing
2-forms, and returns the exact dimensions of the two orientation-side
solution spaces together with a classification report.
"""

from .curvature import (
    ConnectionCoeffs,
    CurvatureData,
    GeometryFlags,
    cov_deriv_endo,
    flags,
    levi_civita,
    riemann,
    weyl_blocks,
)
from .exterior4 import (
    Form,
    bivector_commutator,
    bivector_to_endo,
    endo_to_bivector,
    hodge,
    inner,
    interior,
    monomial,
    sd_asd_split,
    tilde_map,
    wedge,
)
from .killing import (
    Classification,
    HolonomyResult,
    KillingConnection,
    PreconditionError,
    Rank8Result,
    build_killing_connection,
    ck_dims,
    classify,
    holonomy_parallel_dim,
    invariant_ck_solve,
    rank8_connection,
    scan_invariant_lck,
    weyl_eigenstructure_check,
)
from .liealg import (
    LckReport,
    MetricLieAlgebra,
    ParseError,
    ValidationError,
    abelian,
    build_algebra,
    ce_d,
    from_json_dict,
    gab,
    gab_complex_structure,
    lck_check,
    make_family,
    nijenhuis,
    to_json_dict,
    type2,
    type3,
    type4,
    type6,
    validate,
)
from .report import build_report, report_to_json, report_to_markdown

__all__ = [name for name in dir() if not name.startswith("_")]
