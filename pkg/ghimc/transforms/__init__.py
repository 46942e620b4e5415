from .backward import (
    DENOMINATOR_FACTOR,
    BackwardTransform,
    denominator_inverse,
    backward_baecklund,
    darboux_from_backward,
    backward_ghimc_report,
)
from .darboux import (
    PATH_TOLERANCE,
    DarbouxData,
    DarbouxRun,
    christoffel_form,
    christoffel,
    christoffel_residuals,
    coupled_rhs,
    darboux_certificate,
    darboux_solve,
    darboux_family,
)
from .dtnr import (
    CLASSICALITY_TOLERANCE,
    MEAN_CURVATURE_FACTOR,
    GHIMC_TOLERANCE,
    TransformReport,
    dtnr_check,
)
from .equivariance import TRANSFORMS, equivariance_check


__all__ = [
    "DENOMINATOR_FACTOR",
    "PATH_TOLERANCE",
    "CLASSICALITY_TOLERANCE",
    "MEAN_CURVATURE_FACTOR",
    "GHIMC_TOLERANCE",
    "TRANSFORMS",
    "BackwardTransform",
    "DarbouxData",
    "DarbouxRun",
    "TransformReport",
    "denominator_inverse",
    "backward_baecklund",
    "darboux_from_backward",
    "backward_ghimc_report",
    "christoffel_form",
    "christoffel",
    "christoffel_residuals",
    "coupled_rhs",
    "darboux_certificate",
    "darboux_solve",
    "darboux_family",
    "dtnr_check",
    "equivariance_check",
]
