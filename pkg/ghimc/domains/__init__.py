from .grid import BOUNDARY_MARGIN, GridSpec, ScalarField, OneForm, TwoForm
from .residuals import ResidualReport, residual_report, combined_report
from .calculus import (
    CLOSEDNESS_TOLERANCE,
    differential,
    hodge_star,
    exterior_derivative,
    wedge,
    decompose_left,
    decompose_right,
    form_report,
    closedness_report,
    closedness_residual,
    integrate_potential,
    path_disagreement,
)


__all__ = [
    "BOUNDARY_MARGIN",
    "CLOSEDNESS_TOLERANCE",
    "GridSpec",
    "ScalarField",
    "OneForm",
    "TwoForm",
    "ResidualReport",
    "residual_report",
    "combined_report",
    "differential",
    "hodge_star",
    "exterior_derivative",
    "wedge",
    "decompose_left",
    "decompose_right",
    "form_report",
    "closedness_report",
    "closedness_residual",
    "integrate_potential",
    "path_disagreement",
]
