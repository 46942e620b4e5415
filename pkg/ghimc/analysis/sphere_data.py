"""Mean curvature sphere data of a sampled conformal map.

For a conformal map f the left and right normals are N = f_y f_x^-1 and
R = -f_x^-1 f_y, so that *df = N df = -df R, and the mean curvature datum H
is defined by df H = (dN)_N. In the x component this reads
H = f_x^-1 (N_x - N N_y) / 2.
"""
from dataclasses import dataclass
import warnings

import numpy as np

from ..quaternion import mul, conj, norm, masked_inverse, unit_imaginary_defect
from ..domains import (
    BOUNDARY_MARGIN,
    ScalarField,
    differential,
    hodge_star,
    decompose_right,
    residual_report,
    combined_report,
    form_report,
)
from ..utils.errors import AllBranch


BRANCH_FACTOR = 1e-9


class SurfaceGrid(ScalarField):
    """Samples of a map f from a grid rectangle to H."""

    def __init__(self, grid, f, mask=None):
        super().__init__(grid, f, mask=mask)

    @property
    def f(self):
        return self.values

    @classmethod
    def from_field(cls, field):
        return cls(field.grid, field.values, mask=field.mask)

    def moved(self, motion):
        """The surface B f for a EuclideanMotion B."""
        return SurfaceGrid(self.grid, motion(self.values), mask=self.mask)


@dataclass
class SphereData:
    """Frame data (N, R, H) of the mean curvature sphere of a surface.

    Attributes
    ----------
    N, R : ScalarField
        Left and right normals, unit imaginary off ``branch_mask``.
    H : ScalarField
        Mean curvature datum, quaternion valued in general.
    branch_mask : numpy array of bool
        Nodes where f_x vanishes (to the branch tolerance).
    """

    N: ScalarField
    R: ScalarField
    H: ScalarField
    branch_mask: np.ndarray

    @property
    def grid(self):
        return self.N.grid


def normals(surface, branch_factor=BRANCH_FACTOR):
    """Left and right normals N = f_y f_x^-1, R = -f_x^-1 f_y.

    Parameters
    ----------
    surface : SurfaceGrid
        Sampled map.
    branch_factor : float
        Nodes with |f_x| below ``branch_factor`` times the median |f_x|
        are treated as branch points and masked.

    Returns
    -------
    N, R : ScalarField
    branch_mask : numpy array of bool

    Raises
    ------
    AllBranch
        If every node is a branch point.
    """
    df = differential(surface)
    magnitude = norm(df.cx)
    finite = np.isfinite(magnitude)
    scale = float(np.median(magnitude[finite])) if finite.any() else 0.0
    floor = branch_factor * scale
    fx_inverse, branch_mask = masked_inverse(df.cx, floor)
    if scale == 0.0 or branch_mask.all():
        raise AllBranch("f_x vanishes on the whole grid.", residual=scale)
    if branch_mask.any():
        warnings.warn(
            f"{int(branch_mask.sum())} branch point node(s) masked "
            f"(|f_x| <= {floor:.3e})."
        )
    left = mul(df.cy, fx_inverse)
    right = -mul(fx_inverse, df.cy)
    grid = surface.grid
    return ScalarField(grid, left), ScalarField(grid, right), branch_mask


def conformality_residual(surface, margin=BOUNDARY_MARGIN, branch_factor=BRANCH_FACTOR):
    """Report of how far the sampled map is from being conformal.

    The components are the relative metric defect
    ||f_x|^2 - |f_y|^2| / |f_x|^2, the relative angle defect
    |<f_x, f_y>| / |f_x|^2 and the defects |N^2 + 1|, |R^2 + 1|.
    """
    grid = surface.grid
    df = differential(surface)
    fx_square = np.sum(df.cx * df.cx, axis=-1)
    fy_square = np.sum(df.cy * df.cy, axis=-1)
    scale = np.maximum(fx_square, 1e-30)
    N, R, _ = normals(surface, branch_factor)
    reports = [
        residual_report("metric", np.abs(fx_square - fy_square) / scale, grid, margin),
        residual_report(
            "angle", np.abs(np.sum(df.cx * df.cy, axis=-1)) / scale, grid, margin
        ),
        residual_report("left_normal_square", unit_imaginary_defect(N.values), grid, margin),
        residual_report("right_normal_square", unit_imaginary_defect(R.values), grid, margin),
    ]
    return combined_report("conformality", reports)


def mean_curvature(surface, branch_factor=BRANCH_FACTOR):
    """SphereData of a sampled conformal map.

    Returns
    -------
    sphere : SphereData
    """
    N, R, branch_mask = normals(surface, branch_factor)
    df = differential(surface)
    dN = differential(N)
    fx_inverse, _ = masked_inverse(df.cx)
    H = 0.5 * mul(fx_inverse, dN.cx - mul(N.values, dN.cy))
    return SphereData(N=N, R=R, H=ScalarField(surface.grid, H), branch_mask=branch_mask)


def mean_curvature_from_y(surface, sphere):
    """H recomputed from the y component, f_y^-1 (N_y + N N_x) / 2."""
    df = differential(surface)
    dN = differential(sphere.N)
    fy_inverse, _ = masked_inverse(df.cy)
    return ScalarField(
        surface.grid, 0.5 * mul(fy_inverse, dN.cy + mul(sphere.N.values, dN.cx))
    )


def mean_curvature_vector(sphere):
    """The mean curvature vector -N conj(H)."""
    return ScalarField(sphere.grid, -mul(sphere.N.values, conj(sphere.H.values)))


def real_valued_h(sphere, tolerance=1e-6):
    """True when H is real up to ``tolerance`` relative to max |H|."""
    values = sphere.H.values
    scale = np.nanmax(norm(values)) if np.any(np.isfinite(values)) else 0.0
    if not scale > 0.0:
        return True
    return bool(np.nanmax(norm(values[..., 1:])) <= tolerance * scale)


def sphere_consistency(surface, sphere, margin=BOUNDARY_MARGIN):
    """Checks the relations the frame data (N, R, H) must satisfy.

    Returns
    -------
    report : ResidualReport
        Combined report with one component per relation.
    """
    grid = surface.grid
    N, R, H = sphere.N.values, sphere.R.values, sphere.H.values
    df = differential(surface)
    star_df = hodge_star(df)
    dR = differential(sphere.R)
    _, dR_minus = decompose_right(dR, sphere.R)
    h_from_y = mean_curvature_from_y(surface, sphere).values
    conj_h = conj(H)
    reports = [
        residual_report("left_normal_square", unit_imaginary_defect(N), grid, margin),
        residual_report("right_normal_square", unit_imaginary_defect(R), grid, margin),
        residual_report("rh_minus_hn", norm(mul(R, H) - mul(H, N)), grid, margin),
        form_report("left_conformality", star_df - df.lmul(N), margin),
        form_report("right_conformality", star_df + df.rmul(R), margin),
        residual_report("h_formulas", norm(H - h_from_y), grid, margin),
        form_report("h_right_normal", df.lmul(H) - dR_minus, margin),
        residual_report(
            "mean_curvature_vector", norm(mul(N, conj_h) - mul(conj_h, R)), grid, margin
        ),
    ]
    return combined_report("sphere_consistency", reports)
