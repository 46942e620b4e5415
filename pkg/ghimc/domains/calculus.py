"""Exterior calculus of H-valued fields on a uniform grid.

Derivatives are second order central differences in the interior and
second order one-sided differences on the boundary (``numpy.gradient``
with ``edge_order=2``). Values are indexed ``[j, i]`` so x derivatives run
along axis 1 and y derivatives along axis 0.
"""
import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..quaternion import as_quaternion, mul, norm, unit_imaginary_defect
from ..utils.errors import NotClosed, NotComplexStructure
from .grid import BOUNDARY_MARGIN, ScalarField, OneForm, TwoForm, _values
from .residuals import residual_report


CLOSEDNESS_TOLERANCE = 1e-2
COMPLEX_STRUCTURE_TOLERANCE = 1e-2


def partial_x(values, grid):
    return np.gradient(values, grid.hx, axis=1, edge_order=2)


def partial_y(values, grid):
    return np.gradient(values, grid.hy, axis=0, edge_order=2)


def differential(f):
    """The one-form df = f_x dx + f_y dy of a scalar field."""
    grid = f.grid
    return OneForm(grid, partial_x(f.values, grid), partial_y(f.values, grid))


def hodge_star(omega):
    """(*omega)(d/dx) = omega(d/dy), (*omega)(d/dy) = -omega(d/dx)."""
    return OneForm(omega.grid, omega.cy, -omega.cx)


def exterior_derivative(omega):
    """d omega = (d/dx omega(d/dy) - d/dy omega(d/dx)) dx ^ dy."""
    grid = omega.grid
    return TwoForm(grid, partial_x(omega.cy, grid) - partial_y(omega.cx, grid))


def wedge(omega, eta):
    """omega ^ eta, keeping the order of the quaternion products."""
    omega.grid.check_same(eta.grid)
    return TwoForm(omega.grid, mul(omega.cx, eta.cy) - mul(omega.cy, eta.cx))


def _check_complex_structure(field, tolerance):
    defect = unit_imaginary_defect(_values(field))
    worst = np.nanmax(defect) if np.any(np.isfinite(defect)) else 0.0
    if worst > tolerance:
        raise NotComplexStructure(
            "The multiplier is not a unit imaginary field.",
            residual=float(worst),
            tolerance=tolerance,
        )


def decompose_left(omega, N, tolerance=COMPLEX_STRUCTURE_TOLERANCE):
    """Splits omega = omega_N + omega_{-N} with omega_N = (omega - N*omega)/2.

    Returns
    -------
    omega_n, omega_minus_n : OneForm
        The parts with *omega_N = N omega_N and *omega_{-N} = -N omega_{-N}.
    """
    _check_complex_structure(N, tolerance)
    n = _values(N)
    omega_n = OneForm(
        omega.grid,
        0.5 * (omega.cx - mul(n, omega.cy)),
        0.5 * (omega.cy + mul(n, omega.cx)),
    )
    return omega_n, omega - omega_n


def decompose_right(omega, N, tolerance=COMPLEX_STRUCTURE_TOLERANCE):
    """Splits omega = omega^N + omega^{-N} with omega^N = (omega - *omega N)/2.

    Returns
    -------
    omega_n, omega_minus_n : OneForm
        The parts with *omega^N = omega^N N and *omega^{-N} = -omega^{-N} N.
    """
    _check_complex_structure(N, tolerance)
    n = _values(N)
    omega_n = OneForm(
        omega.grid,
        0.5 * (omega.cx - mul(omega.cy, n)),
        0.5 * (omega.cy + mul(omega.cx, n)),
    )
    return omega_n, omega - omega_n


def form_report(name, omega, margin=BOUNDARY_MARGIN, mask=None):
    """Max-norm report of a one-form or two-form over interior nodes."""
    return residual_report(name, omega.pointwise_norm(), omega.grid, margin, mask)


def closedness_report(omega, margin=BOUNDARY_MARGIN, name="closedness"):
    return form_report(name, exterior_derivative(omega), margin)


def closedness_residual(omega, margin=BOUNDARY_MARGIN):
    """Max-norm of d omega over the interior nodes."""
    return closedness_report(omega, margin).max


def _anchored_integral(values, h, axis, start):
    integral = cumulative_trapezoid(values, dx=h, axis=axis, initial=0.0)
    return integral - np.take(integral, [start], axis=axis)


def _potential(omega, p0, v0, order):
    grid = omega.grid
    i0, j0 = p0
    v0 = as_quaternion(v0)
    if order == "rows":
        base = v0 + _anchored_integral(omega.cx[j0], grid.hx, 0, i0)
        return base[np.newaxis] + _anchored_integral(omega.cy, grid.hy, 0, j0)
    elif order == "columns":
        base = v0 + _anchored_integral(omega.cy[:, i0], grid.hy, 0, j0)
        return base[:, np.newaxis] + _anchored_integral(omega.cx, grid.hx, 1, i0)
    raise ValueError(f"Integration order {order} is not valid.")


def integrate_potential(
    omega,
    p0=(0, 0),
    v0=0.0,
    tolerance=CLOSEDNESS_TOLERANCE,
    margin=BOUNDARY_MARGIN,
    order="rows",
):
    """Potential F with dF = omega and F(p0) = v0.

    Trapezoidal sums run along the row of ``p0`` and then up and down every
    column (``order="rows"``), or along the column of ``p0`` and then every
    row (``order="columns"``).

    Parameters
    ----------
    omega : OneForm
        Closed one-form.
    p0 : tuple of int
        Base node ``(i, j)``.
    v0 : array_like
        Value at the base node.
    tolerance : float
        Largest accepted closedness residual.
    margin : int
        Boundary rings left out of the closedness check.
    order : str
        ``"rows"`` or ``"columns"``.

    Returns
    -------
    F : ScalarField

    Raises
    ------
    NotClosed
        If the closedness residual of omega exceeds ``tolerance``.
    """
    report = closedness_report(omega, margin)
    if report.max > tolerance:
        raise NotClosed(
            "Cannot integrate a one-form that is not closed.",
            residual=report.max,
            tolerance=tolerance,
            node=report.worst_node,
        )
    return ScalarField(omega.grid, _potential(omega, p0, v0, order))


def path_disagreement(omega, p0=(0, 0), margin=0):
    """Max difference between the row-first and column-first potentials."""
    rows = _potential(omega, p0, 0.0, "rows")
    columns = _potential(omega, p0, 0.0, "columns")
    return residual_report("path_disagreement", norm(rows - columns), omega.grid, margin)
