"""Behaviour of the transforms under Euclidean motions B a = r a s^-1 + t.

Under B the frame data transform as N -> r N r^-1, R -> s R s^-1 and
H -> s H r^-1; the Darboux system seeds as lambda_inf -> r lambda_inf s^-1,
lambda_L -> s lambda_L s^-1, and the backward Baecklund potential as
mu -> r mu s^-1.
"""
import numpy as np

from ..quaternion import EuclideanMotion, as_quaternion, mul_chain, inverse, norm, conj
from ..domains import BOUNDARY_MARGIN
from ..analysis import SurfaceGrid, mean_curvature, ghimc_residual, eta_residual
from .backward import backward_baecklund, _base_node
from .darboux import christoffel, darboux_solve


TRANSFORMS = ("ghimc", "backward", "darboux")


def _deviation(computed, predicted, margin, grid):
    interior = grid.interior(margin)
    difference = norm(computed - predicted)[interior]
    scale = max(1.0, float(np.nanmax(norm(predicted)[interior])))
    return float(np.nanmax(difference)) / scale


def _relative_change(before, after):
    return abs(after - before) / max(abs(before), np.finfo(float).tiny)


def _change(before, after):
    """Change relative to max(1, |before|), like ``_deviation``."""
    return abs(after - before) / max(1.0, abs(before))


def _sign_resolution(sphere, moved_sphere, motion, margin):
    """Compares the H of the moved surface with +s H r^-1 and -s H r^-1."""
    predicted = mul_chain(motion.s, sphere.H.values, inverse(motion.r))
    grid = sphere.grid
    plus = _deviation(moved_sphere.H.values, predicted, margin, grid)
    minus = _deviation(moved_sphere.H.values, -predicted, margin, grid)
    return {"plus": plus, "minus": minus, "sign": "+" if plus <= minus else "-"}


def _ghimc_check(surface, moved, sphere, moved_sphere, motion, margin, **kwargs):
    h_min = kwargs.get("h_min")
    before = ghimc_residual(surface, sphere, h_min, margin).max
    after = ghimc_residual(moved, moved_sphere, h_min, margin).max
    eta_before = eta_residual(surface, sphere, margin=margin).max
    eta_after = eta_residual(moved, moved_sphere, margin=margin).max
    return {
        "ghimc_before": before,
        "ghimc_after": after,
        "ghimc_relative_change": _relative_change(before, after),
        "eta_relative_change": _relative_change(eta_before, eta_after),
        "deviation": _change(before, after),
    }


def _backward_check(surface, moved, sphere, moved_sphere, motion, margin, **kwargs):
    mu0 = kwargs.get("mu0", 0.0)
    p0 = _base_node(surface.grid, kwargs.get("p0"))
    h_min = kwargs.get("h_min")
    tolerance = kwargs.get("tolerance")
    options = {"h_min": h_min, "margin": margin, "p0": p0}
    if tolerance is not None:
        options["tolerance"] = tolerance
    original = backward_baecklund(surface, sphere, mu0=mu0, **options)
    transformed = backward_baecklund(
        moved, moved_sphere, mu0=motion.linear(mu0), **options
    )
    # h -> r h s^-1 + t/2, hence h_bar -> s h_bar r^-1 + conj(t)/2
    predicted = mul_chain(motion.s, original.h_bar.values, inverse(motion.r))
    predicted = predicted + 0.5 * conj(motion.t)
    predicted_mu = motion.linear(original.mu.values)
    grid = surface.grid
    return {
        "deviation": _deviation(transformed.h_bar.values, predicted, margin, grid),
        "mu_deviation": _deviation(transformed.mu.values, predicted_mu, margin, grid),
        "residual_before": original.residual.max,
        "residual_after": transformed.residual.max,
    }


def _darboux_check(surface, moved, sphere, moved_sphere, motion, margin, **kwargs):
    rho = kwargs.get("rho", 1.0)
    p0 = _base_node(surface.grid, kwargs.get("p0"))
    lambda_inf0 = kwargs.get("lambda_inf0")
    if lambda_inf0 is None:
        lambda_inf0 = -surface.at(*p0)
    lambda_l0 = kwargs.get("lambda_l0", 1.0)
    g0 = kwargs.get("g0", 0.0)
    g = christoffel(surface, p0=p0, g0=g0)
    moved_g = christoffel(
        moved, p0=p0, g0=mul_chain(motion.s, as_quaternion(g0), inverse(motion.r))
    )
    _, f_hat, _ = darboux_solve(
        surface, g, rho, lambda_inf0=lambda_inf0, lambda_l0=lambda_l0, p0=p0, margin=margin
    )
    _, moved_f_hat, _ = darboux_solve(
        moved,
        moved_g,
        rho,
        lambda_inf0=motion.linear(lambda_inf0),
        lambda_l0=mul_chain(motion.s, as_quaternion(lambda_l0), inverse(motion.s)),
        p0=p0,
        margin=margin,
    )
    return {
        "deviation": _deviation(
            moved_f_hat.values, motion(f_hat.values), margin, surface.grid
        ),
    }


_CHECKS = {
    "ghimc": _ghimc_check,
    "backward": _backward_check,
    "darboux": _darboux_check,
}


def equivariance_check(
    surface, r=1.0, s=1.0, t=0.0, transform="ghimc", margin=BOUNDARY_MARGIN, **kwargs
):
    """Applies a motion before and after a transform and compares.

    Parameters
    ----------
    surface : SurfaceGrid
    r, s : array_like
        Unit quaternions of the motion.
    t : array_like
        Translation.
    transform : str
        ``"ghimc"`` (GHIMC and eta residuals), ``"backward"`` (backward
        Baecklund transform) or ``"darboux"`` (classical Darboux transform
        through the Christoffel dual).
    margin : int
        Boundary rings left out.
    **kwargs
        Seeds and options of the transform: ``rho``, ``p0``, ``mu0``,
        ``lambda_inf0``, ``lambda_l0``, ``g0``, ``h_min``, ``tolerance``.

    Returns
    -------
    report : dict
        ``deviation`` is the max difference between the two orders,
        relative to max(1, |value|); ``mean_curvature_sign`` records which
        of H -> +s H r^-1 and H -> -s H r^-1 holds.

    Raises
    ------
    NotUnit
        If r or s is not a unit quaternion.
    """
    if transform not in _CHECKS:
        raise ValueError(f"Transform {transform} is not valid, use one of {TRANSFORMS}.")
    motion = r if isinstance(r, EuclideanMotion) else EuclideanMotion(r, s, t)
    moved = SurfaceGrid(surface.grid, motion(surface.values))
    sphere = mean_curvature(surface)
    moved_sphere = mean_curvature(moved)
    report = _CHECKS[transform](
        surface, moved, sphere, moved_sphere, motion, margin, **kwargs
    )
    report["transform"] = transform
    report["motion"] = motion.to_dict()
    report["mean_curvature_sign"] = _sign_resolution(sphere, moved_sphere, motion, margin)
    return report
