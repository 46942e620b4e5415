"""Christoffel duals and classical Darboux transforms of isothermic surfaces.

A Christoffel pair (f, g) with df ^ dg = dg ^ df = 0 yields a family of
Darboux transforms f_hat = lambda_inf lambda_L^-1 + f, one for every
spectral parameter rho, from solutions of the coupled linear system

    d lambda_inf = -df lambda_L,    d lambda_L = -rho dg lambda_inf.
"""
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from ..quaternion import ONE, as_quaternion, mul, norm, masked_inverse
from ..domains import (
    BOUNDARY_MARGIN,
    CLOSEDNESS_TOLERANCE,
    OneForm,
    ScalarField,
    ResidualReport,
    differential,
    wedge,
    decompose_left,
    form_report,
    closedness_report,
    combined_report,
    integrate_potential,
    residual_report,
)
from ..analysis import SurfaceGrid, mean_curvature
from ..solvers import sampled_rk4_step, march, linear_midpoint
from ..utils.errors import GhimcError, PathInconsistent
from .backward import DENOMINATOR_FACTOR, denominator_inverse, _base_node


PATH_TOLERANCE = 1e-2


def christoffel_form(surface):
    """The one-form f_x^-1 dx - f_y^-1 dy."""
    df = differential(surface)
    fx_inverse, _ = masked_inverse(df.cx)
    fy_inverse, _ = masked_inverse(df.cy)
    return OneForm(surface.grid, fx_inverse, -fy_inverse)


def christoffel(
    surface,
    p0=None,
    g0=0.0,
    tolerance=CLOSEDNESS_TOLERANCE,
    margin=BOUNDARY_MARGIN,
):
    """Christoffel dual g of a surface given in curvature line coordinates.

    Parameters
    ----------
    surface : SurfaceGrid
        Conformal map, isothermic in the grid coordinates.
    p0 : tuple of int, optional
        Base node, the grid center by default.
    g0 : array_like
        Value of g at the base node.
    tolerance : float
        Largest accepted closedness residual of dg.
    margin : int
        Boundary rings left out of the check.

    Returns
    -------
    g : ScalarField

    Raises
    ------
    NotClosed
        If the coordinates are not curvature line coordinates.
    """
    p0 = _base_node(surface.grid, p0)
    return integrate_potential(
        christoffel_form(surface), p0=p0, v0=g0, tolerance=tolerance, margin=margin
    )


def christoffel_residuals(surface, g=None, margin=BOUNDARY_MARGIN):
    """Wedge residuals of a Christoffel pair.

    With ``g`` omitted the exact form f_x^-1 dx - f_y^-1 dy stands in for dg,
    so that the wedges are algebraic identities of the conformal map.

    Returns
    -------
    report : ResidualReport
        Components df^dg, dg^df, conj(df)^dg, dg^conj(df) and the
        closedness of dg.
    """
    dg = christoffel_form(surface) if g is None else differential(g)
    df = differential(surface)
    df_bar = df.conj()
    return combined_report(
        "christoffel",
        [
            form_report("df_wedge_dg", wedge(df, dg), margin),
            form_report("dg_wedge_df", wedge(dg, df), margin),
            form_report("df_bar_wedge_dg", wedge(df_bar, dg), margin),
            form_report("dg_wedge_df_bar", wedge(dg, df_bar), margin),
            closedness_report(dg, margin, name="dg_closedness"),
        ],
    )


@dataclass
class DarbouxData:
    """Solution of the coupled Darboux system.

    Attributes
    ----------
    lambda_inf, lambda_l : ScalarField
        The two components of the parallel section.
    rho : float
        Spectral parameter.
    base_node : tuple
        Node ``(i, j)`` carrying the initial values.
    lambda_inf0, lambda_l0 : numpy array
        Initial values.
    path_disagreement : ResidualReport
        Relative difference of the row first and column first solutions.
    certificate : ResidualReport
        Residuals of the transform, see ``darboux_certificate``.
    """

    lambda_inf: ScalarField
    lambda_l: ScalarField
    rho: float
    base_node: tuple
    lambda_inf0: np.ndarray
    lambda_l0: np.ndarray
    path_disagreement: ResidualReport
    certificate: ResidualReport = None

    def to_dict(self):
        return {
            "rho": self.rho,
            "base_node": list(self.base_node),
            "lambda_inf0": self.lambda_inf0.tolist(),
            "lambda_l0": self.lambda_l0.tolist(),
            "path_disagreement": self.path_disagreement.to_dict(),
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


def coupled_rhs(rho):
    """Right-hand side of the coupled system along one coordinate line.

    The coefficients are the pair (f_t, g_t) of derivatives along the line
    and the state stacks (lambda_inf, lambda_L) along axis -2.
    """

    def rhs(coefficients, state):
        f_t, g_t = coefficients
        return np.stack(
            [-mul(f_t, state[..., 1, :]), -rho * mul(g_t, state[..., 0, :])], axis=-2
        )

    return rhs


def _march_line(rhs, f_t, g_t, states, start, h):
    """Integrates along axis 0 with one RK4 step per edge."""

    def step(state, index, next_index):
        signed_h = h if next_index > index else -h
        first = (f_t[index], g_t[index])
        last = (f_t[next_index], g_t[next_index])
        middle = (
            linear_midpoint(f_t[index], f_t[next_index]),
            linear_midpoint(g_t[index], g_t[next_index]),
        )
        return sampled_rk4_step(rhs, state, first, middle, last, signed_h)

    return march(step, states, start)


def _sweep(rhs, first_f, first_g, second_f, second_g, h_first, h_second, p0, seed):
    """Solution along the line through p0, then across every other line.

    ``first_*`` hold the coefficients along the first line, ``second_*`` the
    coefficients of the transversal lines with the transversal axis first.
    """
    start_first, start_second = p0
    line = np.empty(first_f.shape[:1] + (2, 4))
    line[start_first] = seed
    line = _march_line(rhs, first_f, first_g, line, start_first, h_first)
    states = np.empty(second_f.shape[:2] + (2, 4))
    states[start_second] = line
    return _march_line(rhs, second_f, second_g, states, start_second, h_second)


def _solve_coupled(df, dg, rho, p0, seed, order):
    grid = df.grid
    i0, j0 = p0
    rhs = coupled_rhs(rho)
    if order == "rows":
        return _sweep(
            rhs, df.cx[j0], dg.cx[j0], df.cy, dg.cy, grid.hx, grid.hy, (i0, j0), seed
        )
    elif order == "columns":
        states = _sweep(
            rhs,
            df.cy[:, i0],
            dg.cy[:, i0],
            np.swapaxes(df.cx, 0, 1),
            np.swapaxes(dg.cx, 0, 1),
            grid.hy,
            grid.hx,
            (j0, i0),
            seed,
        )
        return np.swapaxes(states, 0, 1)
    raise ValueError(f"Integration order {order} is not valid.")


def darboux_certificate(surface, g, rho, lambda_inf, lambda_l, f_hat, g_hat, margin):
    """Residual suite of a Darboux transform from the coupled system.

    Components: both coupled system residuals, (d lambda_L)_R, the wedges
    df_hat ^ dg_hat and dg_hat ^ df_hat.
    """
    df = differential(surface)
    dg = differential(g)
    d_lambda_inf = differential(lambda_inf)
    d_lambda_l = differential(lambda_l)
    sphere = mean_curvature(surface)
    lambda_l_r, _ = decompose_left(d_lambda_l, sphere.R)
    df_hat = differential(f_hat)
    dg_hat = differential(g_hat)
    return combined_report(
        "darboux",
        [
            form_report("coupled_inf", d_lambda_inf + df.rmul(lambda_l), margin),
            form_report(
                "coupled_l", d_lambda_l + dg.rmul(lambda_inf).scale(rho), margin
            ),
            form_report("lambda_l_r", lambda_l_r, margin),
            form_report("f_hat_wedge_g_hat", wedge(df_hat, dg_hat), margin),
            form_report("g_hat_wedge_f_hat", wedge(dg_hat, df_hat), margin),
        ],
    )


def darboux_solve(
    surface,
    g,
    rho,
    lambda_inf0=None,
    lambda_l0=ONE,
    p0=None,
    path_tolerance=PATH_TOLERANCE,
    denominator_factor=DENOMINATOR_FACTOR,
    margin=BOUNDARY_MARGIN,
):
    """Classical Darboux transform of an isothermic surface.

    The coupled system is integrated edge by edge with RK4, the coefficients
    at the half steps being the mean of the two end samples, first along
    the row of ``p0`` and up and down every column, then again along the
    column of ``p0`` and across every row. The row first solution is kept;
    the two must agree.

    Parameters
    ----------
    surface : SurfaceGrid
        Isothermic surface in curvature line coordinates.
    g : ScalarField
        Christoffel dual of ``surface``.
    rho : float
        Spectral parameter.
    lambda_inf0 : array_like, optional
        lambda_inf at ``p0``, -f(p0) by default.
    lambda_l0 : array_like
        lambda_L at ``p0``.
    p0 : tuple of int, optional
        Base node, the grid center by default.
    path_tolerance : float
        Largest accepted disagreement of the two sweeps, relative to
        max(1, |lambda|).
    denominator_factor : float
        Nodes where |lambda_L| or |lambda_inf| fall below this factor times
        their maximum are masked.
    margin : int
        Boundary rings left out of the residuals.

    Returns
    -------
    data : DarbouxData
    f_hat : SurfaceGrid
        lambda_inf lambda_L^-1 + f.
    g_hat : ScalarField
        lambda_L lambda_inf^-1 + g.

    Raises
    ------
    PathInconsistent
        If the two sweeps disagree by more than ``path_tolerance``.
    ZeroDenominator
        If lambda_L vanishes on the whole grid.
    """
    grid = surface.grid
    surface.grid.check_same(g.grid)
    p0 = _base_node(grid, p0)
    if lambda_inf0 is None:
        lambda_inf0 = -surface.at(*p0)
    lambda_inf0 = as_quaternion(lambda_inf0)
    lambda_l0 = as_quaternion(lambda_l0)
    seed = np.stack([lambda_inf0, lambda_l0])
    df = differential(surface)
    dg = differential(g)

    rows = _solve_coupled(df, dg, rho, p0, seed, "rows")
    columns = _solve_coupled(df, dg, rho, p0, seed, "columns")
    scale = np.maximum(1.0, np.max(norm(rows), axis=-1))
    disagreement = np.max(norm(rows - columns), axis=-1) / scale
    disagreement_report = residual_report("path_disagreement", disagreement, grid, 0)
    if disagreement_report.max > path_tolerance:
        raise PathInconsistent(
            "Row first and column first solutions of the Darboux system disagree.",
            residual=disagreement_report.max,
            tolerance=path_tolerance,
            node=disagreement_report.worst_node,
        )

    lambda_inf = ScalarField(grid, rows[..., 0, :])
    lambda_l = ScalarField(grid, rows[..., 1, :])
    lambda_l_inverse = denominator_inverse(lambda_l, denominator_factor, name="lambda_L")
    lambda_inf_inverse = denominator_inverse(
        lambda_inf, denominator_factor, name="lambda_inf"
    )
    f_hat = SurfaceGrid(grid, mul(lambda_inf.values, lambda_l_inverse.values) + surface.values)
    g_hat = ScalarField(grid, mul(lambda_l.values, lambda_inf_inverse.values) + g.values)

    data = DarbouxData(
        lambda_inf=lambda_inf,
        lambda_l=lambda_l,
        rho=float(rho),
        base_node=p0,
        lambda_inf0=lambda_inf0,
        lambda_l0=lambda_l0,
        path_disagreement=disagreement_report,
    )
    data.certificate = darboux_certificate(
        surface, g, rho, lambda_inf, lambda_l, f_hat, g_hat, margin
    )
    return data, f_hat, g_hat


DarbouxRun = namedtuple("DarbouxRun", ["rho", "data", "f_hat", "g_hat", "error"])


def darboux_family(surface, g, rhos, **kwargs):
    """Independent ``darboux_solve`` runs over several spectral parameters.

    Returns
    -------
    runs : list of DarbouxRun
        One entry per rho; failed runs carry the error dictionary and None
        elsewhere.
    """
    runs = []
    for rho in rhos:
        try:
            data, f_hat, g_hat = darboux_solve(surface, g, rho, **kwargs)
            runs.append(DarbouxRun(float(rho), data, f_hat, g_hat, None))
        except GhimcError as error:
            runs.append(DarbouxRun(float(rho), None, None, None, error.to_dict()))
    return runs
