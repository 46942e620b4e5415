from .sphere_data import (
    BRANCH_FACTOR,
    SurfaceGrid,
    SphereData,
    normals,
    conformality_residual,
    mean_curvature,
    mean_curvature_from_y,
    mean_curvature_vector,
    real_valued_h,
    sphere_consistency,
)
from .residuals import (
    MINIMAL_POINT_SCALE,
    minimal_point_floor,
    hopf_w,
    eta_residual,
    inverse_mean_curvature,
    ghimc_residual,
    willmore_diagnostics,
    cond_characterization,
    hopf_q_residual,
    inverse_mean_curvature_fit,
    analyze_surface,
)


__all__ = [
    "BRANCH_FACTOR",
    "MINIMAL_POINT_SCALE",
    "SurfaceGrid",
    "SphereData",
    "normals",
    "conformality_residual",
    "mean_curvature",
    "mean_curvature_from_y",
    "mean_curvature_vector",
    "real_valued_h",
    "sphere_consistency",
    "minimal_point_floor",
    "hopf_w",
    "eta_residual",
    "inverse_mean_curvature",
    "ghimc_residual",
    "willmore_diagnostics",
    "cond_characterization",
    "hopf_q_residual",
    "inverse_mean_curvature_fit",
    "analyze_surface",
]
