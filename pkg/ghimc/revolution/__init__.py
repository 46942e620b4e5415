from .painleve import (
    H_ODE,
    DEGENERACY_TOLERANCE,
    PhiSolution,
    degeneracy_mask,
    piii_residual,
    piii_rhs,
    piii_integrate,
    phi_residual_summary,
)
from .profile import (
    ROTATION_RATE,
    RevolutionProfile,
    profile_from_phi,
    profile_grid,
    rotate_rows,
    surface_from_profile,
    revolution_defect,
    phi_from_surface,
)
from .equivariant import (
    EquivariantSeed,
    EquivariantDarboux,
    PiiiTransform,
    revolution_coefficients,
    equivariant_seed,
    seed_constraints,
    equivariant_darboux_revolution,
    piii_transform,
    piii_transform_family,
)


__all__ = [
    "H_ODE",
    "DEGENERACY_TOLERANCE",
    "ROTATION_RATE",
    "PhiSolution",
    "RevolutionProfile",
    "EquivariantSeed",
    "EquivariantDarboux",
    "PiiiTransform",
    "degeneracy_mask",
    "piii_residual",
    "piii_rhs",
    "piii_integrate",
    "phi_residual_summary",
    "profile_from_phi",
    "profile_grid",
    "rotate_rows",
    "surface_from_profile",
    "revolution_defect",
    "phi_from_surface",
    "revolution_coefficients",
    "equivariant_seed",
    "seed_constraints",
    "equivariant_darboux_revolution",
    "piii_transform",
    "piii_transform_family",
]
