"""Residual functionals of the mean curvature sphere data.

All functionals return ``ResidualReport`` objects (or dictionaries of them)
whose ``max`` is the max-norm over interior nodes.
"""
from collections import namedtuple
import warnings

import numpy as np
from scipy.integrate import trapezoid

from ..quaternion import as_quaternion, mul, norm, real, masked_inverse
from ..domains import (
    BOUNDARY_MARGIN,
    ScalarField,
    differential,
    hodge_star,
    exterior_derivative,
    decompose_left,
    decompose_right,
    form_report,
    closedness_report,
)
from ..utils.errors import GhimcError, MinimalPoint
from .sphere_data import (
    BRANCH_FACTOR,
    conformality_residual,
    mean_curvature,
    real_valued_h,
    sphere_consistency,
)


MINIMAL_POINT_SCALE = 1e-6

WillmoreDiagnostics = namedtuple("WillmoreDiagnostics", ["dw_residual", "energy"])


def minimal_point_floor(grid, scale=MINIMAL_POINT_SCALE):
    """Default H_min, ``scale`` over the grid diameter."""
    return scale / grid.diameter


def hopf_w(surface, sphere):
    """The one-form w = dH + H *df H + R *dH - H *dN."""
    H, R = sphere.H.values, sphere.R.values
    dH = differential(sphere.H)
    star_df = hodge_star(differential(surface))
    star_dH = hodge_star(dH)
    star_dN = hodge_star(differential(sphere.N))
    return dH + star_df.lmul(H).rmul(H) + star_dH.lmul(R) - star_dN.lmul(H)


def eta_residual(surface, sphere, w=None, margin=BOUNDARY_MARGIN):
    """Max-norm of (2dH - w)^{-N}, which vanishes on every conformal map."""
    if w is None:
        w = hopf_w(surface, sphere)
    _, minus_part = decompose_right(differential(sphere.H).scale(2.0) - w, sphere.N)
    return form_report("eta", minus_part, margin)


def inverse_mean_curvature(sphere, h_min=None):
    """H^-1 as a field, masked where |H| <= h_min.

    Returns
    -------
    h_inverse : ScalarField
    minimal : numpy array of bool
        The masked (minimal) nodes.

    Raises
    ------
    MinimalPoint
        If every node is minimal.
    """
    grid = sphere.grid
    if h_min is None:
        h_min = minimal_point_floor(grid)
    values, minimal = masked_inverse(sphere.H.values, h_min)
    if minimal.all():
        largest = np.nanmax(norm(sphere.H.values)) if np.isfinite(sphere.H.values).any() else 0.0
        raise MinimalPoint(
            "The mean curvature datum vanishes on the whole grid.",
            residual=float(largest),
            tolerance=h_min,
        )
    if minimal.any():
        warnings.warn(f"{int(minimal.sum())} minimal node(s) masked (|H| <= {h_min:.3e}).")
    return ScalarField(grid, values), minimal


def _working_inverse(sphere, h_min, margin):
    h_inverse, minimal = inverse_mean_curvature(sphere, h_min)
    if not (sphere.grid.interior(margin) & ~h_inverse.mask).any():
        raise MinimalPoint(
            "No interior node with non vanishing mean curvature datum.",
            tolerance=h_min,
        )
    return h_inverse


def ghimc_residual(surface, sphere, h_min=None, margin=BOUNDARY_MARGIN):
    """Max-norm of d*d(H^-1), zero on GHIMC surfaces.

    Raises
    ------
    MinimalPoint
        If no interior node has |H| > h_min.
    """
    h_inverse = _working_inverse(sphere, h_min, margin)
    laplacian = exterior_derivative(hodge_star(differential(h_inverse)))
    return form_report("ghimc", laplacian, margin)


def willmore_diagnostics(surface, sphere, w=None, margin=BOUNDARY_MARGIN):
    """Willmore residual dw and Willmore energy.

    The energy is (1/pi) times the integral of <A ^ *A>, where the Hopf
    field A acts on the frame (v_inf, v_L) through the lower triangular
    matrix with diagonal (0, b), b = R (dR)_{-R} / 2. Only the diagonal
    enters the trace, so the density is -Re(b_x^2 + b_y^2) / 2.

    Returns
    -------
    diagnostics : WillmoreDiagnostics
        ``dw_residual`` is a ResidualReport, ``energy`` a float.
    """
    if w is None:
        w = hopf_w(surface, sphere)
    dw_report = closedness_report(w, margin, name="willmore_dw")
    dR = differential(sphere.R)
    _, dR_minus = decompose_left(dR, sphere.R)
    b = dR_minus.lmul(sphere.R).scale(0.5)
    density = -0.5 * (real(mul(b.cx, b.cx)) + real(mul(b.cy, b.cy)))
    density = np.nan_to_num(density, nan=0.0)
    grid = surface.grid
    energy = trapezoid(trapezoid(density, dx=grid.hx, axis=1), dx=grid.hy) / np.pi
    return WillmoreDiagnostics(dw_report, float(energy))


def cond_characterization(
    surface, sphere, n=0.0, w=None, h_min=None, margin=BOUNDARY_MARGIN
):
    """Closedness characterization of GHIMC surfaces.

    Parameters
    ----------
    surface : SurfaceGrid
    sphere : SphereData
    n : array_like
        Quaternion multiplying *dH^-1 from the left.
    w : OneForm, optional
        Precomputed Hopf one-form.
    h_min : float, optional
        Minimal point floor.
    margin : int
        Boundary rings left out.

    Returns
    -------
    reports : dict
        ``"identity"``: residual of -H^-1 (*w) H^-1 = *dH^-1 + d(f - N H^-1),
        which holds on every conformal map; ``"closedness"``: closedness
        residual of H^-1 (*w) H^-1 + n *dH^-1.
    """
    if w is None:
        w = hopf_w(surface, sphere)
    n = as_quaternion(n)
    h_inverse = _working_inverse(sphere, h_min, margin)
    star_w = hodge_star(w).lmul(h_inverse).rmul(h_inverse)
    star_dh_inverse = hodge_star(differential(h_inverse))
    potential = ScalarField(
        surface.grid, surface.values - mul(sphere.N.values, h_inverse.values)
    )
    identity = -star_w - (star_dh_inverse + differential(potential))
    combination = star_w + star_dh_inverse.lmul(n)
    return {
        "identity": form_report("cond_identity", identity, margin),
        "closedness": closedness_report(combination, margin, name="cond_closedness"),
    }


def hopf_q_residual(surface, sphere, w=None, h_min=None, margin=BOUNDARY_MARGIN):
    """The Hopf field Q form H^-1 *(2dH - w) H^-1.

    It equals -2 *dH^-1 - H^-1 *w H^-1 and is closed exactly on GHIMC
    surfaces.

    Returns
    -------
    reports : dict
        ``"identity"`` and ``"closedness"`` reports.
    """
    if w is None:
        w = hopf_w(surface, sphere)
    h_inverse = _working_inverse(sphere, h_min, margin)
    q_form = hodge_star(differential(sphere.H).scale(2.0) - w)
    q_form = q_form.lmul(h_inverse).rmul(h_inverse)
    expected = hodge_star(differential(h_inverse)).scale(-2.0) - hodge_star(w).lmul(
        h_inverse
    ).rmul(h_inverse)
    return {
        "identity": form_report("hopf_q_identity", q_form - expected, margin),
        "closedness": closedness_report(q_form, margin, name="hopf_q_closedness"),
    }


def inverse_mean_curvature_fit(sphere, h_min=None, margin=BOUNDARY_MARGIN):
    """Least squares fit of Re(1/H) = slope x + intercept.

    Returns
    -------
    fit : dict
        ``slope``, ``intercept``, ``max_deviation`` of the fit and
        ``max_imaginary`` of 1/H, over the valid interior nodes.
    """
    grid = sphere.grid
    h_inverse = _working_inverse(sphere, h_min, margin)
    x, _ = grid.coordinates()
    valid = grid.interior(margin) & ~h_inverse.mask
    target = h_inverse.values[..., 0][valid]
    slope, intercept = np.polyfit(x[valid], target, 1)
    deviation = np.abs(target - (slope * x[valid] + intercept))
    return {
        "slope": float(slope),
        "intercept": float(intercept),
        "max_deviation": float(np.max(deviation)),
        "max_imaginary": float(np.max(norm(h_inverse.values[..., 1:][valid]))),
    }


def _attempt(function, *args, **kwargs):
    try:
        return function(*args, **kwargs), None
    except GhimcError as error:
        return None, error.to_dict()


def analyze_surface(
    surface,
    n=0.0,
    h_min=None,
    margin=BOUNDARY_MARGIN,
    branch_factor=BRANCH_FACTOR,
):
    """Runs every analysis on a surface and gathers a JSON ready report.

    Analyses that fail (for instance on minimal surfaces) record their error
    instead of aborting the report.
    """
    report = {
        "grid": surface.grid.to_dict(),
        "conformality": conformality_residual(surface, margin, branch_factor).to_dict(),
    }
    sphere = mean_curvature(surface, branch_factor)
    w = hopf_w(surface, sphere)
    report["sphere_consistency"] = sphere_consistency(surface, sphere, margin).to_dict()
    report["real_valued_h"] = real_valued_h(sphere)
    report["branch_fraction"] = float(np.mean(sphere.branch_mask))
    report["eta"] = eta_residual(surface, sphere, w, margin).to_dict()
    willmore = willmore_diagnostics(surface, sphere, w, margin)
    report["willmore"] = {
        "dw": willmore.dw_residual.to_dict(),
        "energy": willmore.energy,
    }

    ghimc, error = _attempt(ghimc_residual, surface, sphere, h_min, margin)
    report["ghimc"] = error if error else ghimc.to_dict()
    cond, error = _attempt(cond_characterization, surface, sphere, n, w, h_min, margin)
    report["cond"] = error if error else {
        key: value.to_dict() for key, value in cond.items()
    }
    report["cond"]["n"] = as_quaternion(n).tolist()
    hopf_q, error = _attempt(hopf_q_residual, surface, sphere, w, h_min, margin)
    report["hopf_q"] = error if error else {
        key: value.to_dict() for key, value in hopf_q.items()
    }
    fit, error = _attempt(inverse_mean_curvature_fit, sphere, h_min, margin)
    report["inverse_mean_curvature_fit"] = error if error else fit
    return report
