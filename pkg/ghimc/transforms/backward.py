"""Backward Baecklund transform of a GHIMC surface and the Darboux
transform it induces.
"""
from dataclasses import dataclass
import warnings

import numpy as np

from ..quaternion import as_quaternion, mul, conj, norm, masked_inverse
from ..domains import (
    BOUNDARY_MARGIN,
    CLOSEDNESS_TOLERANCE,
    ScalarField,
    ResidualReport,
    differential,
    hodge_star,
    decompose_left,
    form_report,
    closedness_report,
    combined_report,
    integrate_potential,
    path_disagreement,
)
from ..analysis import SurfaceGrid, mean_curvature, ghimc_residual
from ..analysis.residuals import _working_inverse
from ..utils.errors import GhimcError, NotGHIMC, ZeroDenominator


DENOMINATOR_FACTOR = 1e-9


@dataclass
class BackwardTransform:
    """Result of ``backward_baecklund``.

    Attributes
    ----------
    h_bar : ScalarField
        The backward Baecklund transform, conj(h).
    mu : ScalarField
        Potential with d mu = *dH^-1.
    residual : ResidualReport
        Max-norm of (d h_bar)_R.
    """

    h_bar: ScalarField
    mu: ScalarField
    residual: ResidualReport


def _base_node(grid, p0):
    return grid.center_node() if p0 is None else tuple(p0)


def denominator_inverse(field, factor=DENOMINATOR_FACTOR, name="denominator"):
    """Inverse of a field with the near-zero nodes masked.

    Nodes with |q| <= ``factor`` max|q| are masked with a warning.

    Raises
    ------
    ZeroDenominator
        If every node is masked.
    """
    values = field.values
    finite = np.isfinite(norm(values))
    scale = float(np.max(norm(values)[finite])) if finite.any() else 0.0
    floor = factor * scale
    inverse, mask = masked_inverse(values, floor)
    if scale == 0.0 or mask.all():
        raise ZeroDenominator(f"The {name} vanishes on the whole grid.", residual=scale)
    if mask.any():
        warnings.warn(
            f"{int(mask.sum())} node(s) with vanishing {name} masked (|q| <= {floor:.3e})."
        )
    return ScalarField(field.grid, inverse)


def backward_baecklund(
    surface,
    sphere,
    mu0=0.0,
    p0=None,
    h_min=None,
    tolerance=CLOSEDNESS_TOLERANCE,
    margin=BOUNDARY_MARGIN,
):
    """Backward Baecklund transform h_bar = conj(h), h = (-mu + f - N H^-1) / 2.

    Parameters
    ----------
    surface : SurfaceGrid
        GHIMC surface.
    sphere : SphereData
        Its mean curvature sphere data.
    mu0 : array_like
        Value of mu at the base node.
    p0 : tuple of int, optional
        Base node ``(i, j)``, the grid center by default.
    h_min : float, optional
        Minimal point floor of |H|.
    tolerance : float
        Largest accepted GHIMC residual.
    margin : int
        Boundary rings left out of the residuals.

    Returns
    -------
    transform : BackwardTransform

    Raises
    ------
    NotGHIMC
        If d*dH^-1 exceeds ``tolerance``, so that mu does not exist.
    MinimalPoint
        If H vanishes on the working region.
    """
    h_inverse = _working_inverse(sphere, h_min, margin)
    star_dh_inverse = hodge_star(differential(h_inverse))
    report = closedness_report(star_dh_inverse, margin, name="ghimc")
    if report.max > tolerance:
        raise NotGHIMC(
            "The surface is not GHIMC, *dH^-1 has no potential.",
            residual=report.max,
            tolerance=tolerance,
            node=report.worst_node,
        )
    p0 = _base_node(surface.grid, p0)
    mu = integrate_potential(
        star_dh_inverse, p0=p0, v0=as_quaternion(mu0), tolerance=tolerance, margin=margin
    )
    h = 0.5 * (-mu.values + surface.values - mul(sphere.N.values, h_inverse.values))
    h_bar = ScalarField(surface.grid, conj(h))
    baecklund_part, _ = decompose_left(differential(h_bar), sphere.R)
    residual = form_report("backward_baecklund", baecklund_part, margin)
    return BackwardTransform(h_bar=h_bar, mu=mu, residual=residual)


def darboux_from_backward(
    surface,
    sphere,
    h_bar,
    lambda_inf0=None,
    p0=None,
    tolerance=CLOSEDNESS_TOLERANCE,
    margin=BOUNDARY_MARGIN,
    denominator_factor=DENOMINATOR_FACTOR,
):
    """Darboux transform f_hat = lambda_inf h_bar^-1 + f.

    lambda_inf is the potential of -df h_bar with lambda_inf(p0) =
    ``lambda_inf0`` (-f(p0) by default).

    Returns
    -------
    f_hat : SurfaceGrid
    lambda_inf : ScalarField
    certificate : ResidualReport
        Components ``coupled`` (d lambda_inf + df h_bar), ``path_disagreement``
        and ``dual`` (the reverse Darboux relation between conj(f_hat) and
        conj(f)).

    Raises
    ------
    NotClosed
        If df h_bar is not closed.
    ZeroDenominator
        If h_bar vanishes on the whole grid.
    """
    grid = surface.grid
    p0 = _base_node(grid, p0)
    if lambda_inf0 is None:
        lambda_inf0 = -surface.at(*p0)
    df = differential(surface)
    omega = -df.rmul(h_bar)
    lambda_inf = integrate_potential(
        omega, p0=p0, v0=lambda_inf0, tolerance=tolerance, margin=margin
    )
    h_bar_inverse = denominator_inverse(h_bar, denominator_factor, name="h_bar")
    f_hat = SurfaceGrid(grid, mul(lambda_inf.values, h_bar_inverse.values) + surface.values)

    coupled = differential(lambda_inf) + df.rmul(h_bar)
    lambda_inverse, _ = masked_inverse(lambda_inf.values)
    dual = differential(h_bar_inverse.map(conj)) + differential(f_hat.map(conj)).rmul(
        -conj(lambda_inverse)
    )
    certificate = combined_report(
        "darboux_from_backward",
        [
            form_report("coupled", coupled, margin),
            path_disagreement(omega, p0, margin),
            form_report("dual", dual, margin),
        ],
    )
    return f_hat, lambda_inf, certificate


def backward_ghimc_report(
    surface, h_bar, h_min=None, margin=BOUNDARY_MARGIN
):
    """GHIMC residual of h_bar read as a surface.

    Whether the backward Baecklund transform of a GHIMC surface is again
    GHIMC is not known; this is a measurement and asserts nothing.

    Returns
    -------
    report : dict
        The residual report, or the error that prevented computing it.
    """
    try:
        transformed = SurfaceGrid.from_field(h_bar)
        sphere = mean_curvature(transformed)
        return ghimc_residual(transformed, sphere, h_min, margin).to_dict()
    except GhimcError as error:
        return error.to_dict()
