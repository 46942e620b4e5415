from dataclasses import dataclass, field

import numpy as np

from ..quaternion import mul, mul_chain, norm, real, masked_inverse
from ..domains import BOUNDARY_MARGIN, residual_report
from ..analysis import BRANCH_FACTOR, mean_curvature, ghimc_residual
from ..utils.errors import GhimcError


CLASSICALITY_TOLERANCE = 5e-3
MEAN_CURVATURE_FACTOR = 5e-2
GHIMC_TOLERANCE = 1e-2

DTNR_NAMES = (
    "sphere_condition",
    "left_normal",
    "right_normal",
    "classicality",
    "mean_curvature",
)


@dataclass
class TransformReport:
    """Residuals relating a surface, a Darboux transform and their frames.

    Attributes
    ----------
    residuals : dict of ResidualReport
        ``sphere_condition``: N T + T H T + T R, ``left_normal``:
        N_hat - N - T H, ``right_normal``: R_hat - R - H_hat T,
        ``classicality``: R_hat + T^-1 N T, ``mean_curvature``: H_hat - H,
        with T = f_hat - f, and ``normal_agreement``: N_hat - R_hat.
    classical : bool
        Whether the classicality residual is below ``tolerance`` and
        H_hat - H is below ``mean_curvature_factor`` times ``h_scale``.
    tolerance : float
        Classicality tolerance used.
    mean_curvature_factor : float
        Allowed H_hat - H relative to ``h_scale``.
    h_scale : float
        max |H| over the interior, the scale of ``mean_curvature``.
    image_in_imaginary : float
        Spread of Re f_hat over the interior nodes.
    ghimc, ghimc_base : ResidualReport or dict
        GHIMC residual of f_hat and of the surface, or the error that
        prevented it.
    ghimc_tolerance : float
    """

    residuals: dict = field(default_factory=dict)
    classical: bool = False
    tolerance: float = CLASSICALITY_TOLERANCE
    mean_curvature_factor: float = MEAN_CURVATURE_FACTOR
    h_scale: float = 0.0
    image_in_imaginary: float = 0.0
    ghimc: object = None
    ghimc_base: object = None
    ghimc_tolerance: float = GHIMC_TOLERANCE

    def __getitem__(self, name):
        return self.residuals[name]

    @property
    def h_deviation(self):
        return self.residuals["mean_curvature"].max

    @property
    def ghimc_passes(self):
        return not isinstance(self.ghimc, dict) and self.ghimc.passes(self.ghimc_tolerance)

    @property
    def ghimc_preserved(self):
        """False only when the surface is GHIMC and f_hat is not."""
        base_passes = not isinstance(self.ghimc_base, dict) and self.ghimc_base.passes(
            self.ghimc_tolerance
        )
        return self.ghimc_passes or not base_passes

    def to_dict(self):
        return {
            "residuals": {key: value.to_dict() for key, value in self.residuals.items()},
            "classical": self.classical,
            "tolerance": self.tolerance,
            "mean_curvature_factor": self.mean_curvature_factor,
            "h_deviation": _finite(self.h_deviation),
            "h_scale": _finite(self.h_scale),
            "image_in_imaginary": _finite(self.image_in_imaginary),
            "ghimc_f_hat": _report_dict(self.ghimc),
            "ghimc_surface": _report_dict(self.ghimc_base),
            "ghimc_tolerance": self.ghimc_tolerance,
            "ghimc_passes": self.ghimc_passes,
        }


def _finite(value):
    value = float(value)
    return value if np.isfinite(value) else None


def _report_dict(report):
    return report if isinstance(report, dict) else report.to_dict()


def _ghimc_or_error(surface, sphere, margin):
    try:
        return ghimc_residual(surface, sphere, margin=margin)
    except GhimcError as error:
        return error.to_dict()


def dtnr_check(
    surface,
    sphere,
    f_hat,
    sphere_hat=None,
    tolerance=CLASSICALITY_TOLERANCE,
    margin=BOUNDARY_MARGIN,
    branch_factor=BRANCH_FACTOR,
    mean_curvature_factor=MEAN_CURVATURE_FACTOR,
    ghimc_tolerance=GHIMC_TOLERANCE,
):
    """Measures the relations between (N, R, H) and the frame of f_hat.

    ``classical`` needs both R_hat = -T^-1 N T and H_hat = H; the other
    residuals and the GHIMC residual of f_hat are reported. None of them
    raises.

    Parameters
    ----------
    surface : SurfaceGrid
    sphere : SphereData
        Frame data of ``surface``.
    f_hat : SurfaceGrid
        A Darboux transform of ``surface``.
    sphere_hat : SphereData, optional
        Frame data of ``f_hat``, computed when omitted.
    tolerance : float
        Classicality tolerance.
    margin : int
        Boundary rings left out.
    branch_factor : float
        Branch point factor used for ``f_hat``.
    mean_curvature_factor : float
        Largest accepted max |H_hat - H| relative to max |H|.
    ghimc_tolerance : float
        Tolerance of the GHIMC residuals.

    Returns
    -------
    report : TransformReport
    """
    grid = surface.grid
    grid.check_same(f_hat.grid)
    if sphere_hat is None:
        sphere_hat = mean_curvature(f_hat, branch_factor)
    N, R, H = sphere.N.values, sphere.R.values, sphere.H.values
    N_hat, R_hat, H_hat = sphere_hat.N.values, sphere_hat.R.values, sphere_hat.H.values
    T = f_hat.values - surface.values
    T_inverse, _ = masked_inverse(T)

    pointwise = {
        "sphere_condition": mul(N, T) + mul_chain(T, H, T) + mul(T, R),
        "left_normal": N_hat - N - mul(T, H),
        "right_normal": R_hat - R - mul(H_hat, T),
        "classicality": R_hat + mul_chain(T_inverse, N, T),
        "mean_curvature": H_hat - H,
        "normal_agreement": N_hat - R_hat,
    }
    residuals = {
        name: residual_report(name, norm(values), grid, margin)
        for name, values in pointwise.items()
    }
    interior = grid.interior(margin)
    h_norm = norm(H)[interior]
    h_scale = float(np.nanmax(h_norm)) if np.isfinite(h_norm).any() else np.nan
    real_part = real(f_hat.values)[interior]
    finite = np.isfinite(real_part)
    spread = float(np.ptp(real_part[finite])) if finite.any() else np.nan
    classical = residuals["classicality"].passes(tolerance) and residuals[
        "mean_curvature"
    ].passes(mean_curvature_factor * h_scale)
    return TransformReport(
        residuals=residuals,
        classical=classical,
        tolerance=tolerance,
        mean_curvature_factor=mean_curvature_factor,
        h_scale=h_scale,
        image_in_imaginary=spread,
        ghimc=_ghimc_or_error(f_hat, sphere_hat, margin),
        ghimc_base=_ghimc_or_error(surface, sphere, margin),
        ghimc_tolerance=ghimc_tolerance,
    )
