"""Verified numerics for curvature pinching on 4-manifolds.

The package re-derives, at machine precision, the computations behind a
family of pinching certificates: spectral feasibility tests for
curvature operators, quadratic optimization over the associated
Einstein simplices and boundary cells, the piecewise optimal lambda
curves, and the resulting Euler/signature geography bounds.
"""

from .curvature import (
    STAR,
    Bivector,
    Certificate,
    CurvOp,
    euler_form,
    i_lambda,
    make_operator,
    pinch_certificate,
    project_einstein,
    sec,
    signature_form,
)
from .errors import (
    BadDelta,
    BadParameter,
    DegenerateDelta,
    DimensionMismatch,
    EmptyRegion,
    EtaOutOfRange,
    NegativeEntry,
    NoSignChange,
    NonPositiveLambda,
    NonTraceless,
    NonUnitPlane,
    NotAFace,
    NotSorted,
    OutOfDomain,
    Pinch4Error,
    ResolutionTooLarge,
    StuckSampler,
)
from .geography import (
    EulerGap,
    GeoBounds,
    HomeoMenu,
    b1_bound,
    breakpoints,
    euler_gap,
    geography_bounds,
    homeo_menu,
    lambda_bar,
    lambda_of_delta,
    min_diameter,
    min_volume,
    region_polygon,
)
from .oracle import (
    AuditReport,
    CheckResult,
    GridExtremum,
    audit,
    grid_extremum,
    sample_pinched,
)
from .polytopes import (
    AffineVertex,
    Polytope,
    einstein_simplex,
    enumerate_faces,
    membership,
    ville_cells,
)
from .qp_face import (
    Extremum,
    QuadForm,
    RestrictedForm,
    optimize,
    restrict,
    threshold_scan,
)
from .quadforms import f_ville, q_eta, q_euler, q_half, q_lambda, ville_cell
from .ricci_bound import psd_offdiag_samples, ricci_rhs, schur_offdiag_bound

__version__ = "0.1.0"

__all__ = [
    "AffineVertex", "AuditReport", "BadDelta", "BadParameter", "Bivector",
    "Certificate", "CheckResult", "CurvOp", "DegenerateDelta",
    "DimensionMismatch", "EmptyRegion", "EtaOutOfRange", "EulerGap",
    "Extremum", "GeoBounds", "GridExtremum", "HomeoMenu", "NegativeEntry",
    "NoSignChange", "NonPositiveLambda", "NonTraceless", "NonUnitPlane",
    "NotAFace", "NotSorted", "OutOfDomain", "Pinch4Error", "Polytope",
    "QuadForm", "ResolutionTooLarge", "RestrictedForm", "STAR",
    "StuckSampler", "audit", "b1_bound", "breakpoints", "euler_form",
    "euler_gap", "f_ville", "geography_bounds", "grid_extremum",
    "homeo_menu", "i_lambda", "lambda_bar", "lambda_of_delta",
    "make_operator", "membership", "min_diameter", "min_volume",
    "optimize", "pinch_certificate", "project_einstein",
    "psd_offdiag_samples", "q_eta", "q_euler", "q_half", "q_lambda",
    "region_polygon", "restrict", "ricci_rhs", "sample_pinched",
    "schur_offdiag_bound", "sec", "signature_form", "threshold_scan",
    "ville_cell", "ville_cells", "einstein_simplex", "enumerate_faces",
]
