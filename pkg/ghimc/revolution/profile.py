"""Surfaces of revolution about the k-axis and their Painleve III angle.

A surface of revolution in conformal coordinates reads

    f(x + yi) = (e^{u/2} / a) (cos(ay) i + sin(ay) j) + (c / a) k.

It is HIMC exactly when a = 2 and the angle phi with
sin phi = c' e^{-u/2} / 2, cos phi = u' / 4 solves Painleve III, in which
case e^u = x^2 (phi' + 2 sin phi)^2 / 4 and
c = -(x^2 / 4) (phi'^2 - 4 sin^2 phi).
"""
from dataclasses import dataclass
import warnings

import numpy as np

from ..quaternion import mul_chain, conj, rotation_about_k
from ..domains import GridSpec
from ..analysis import SurfaceGrid
from ..utils.errors import Degenerate, DomainError, NotRevolution, NotConformal
from .painleve import PhiSolution, phi_residual_summary


ROTATION_RATE = 2.0
IDENTITY_TOLERANCE = 1e-6
REVOLUTION_TOLERANCE = 1e-6
CONFORMAL_TOLERANCE = 1e-3
EXTRACTED_RESIDUAL_WARNING = 1e-2


@dataclass
class RevolutionProfile:
    """Profile functions of a surface of revolution.

    Attributes
    ----------
    xs : numpy array
        Uniform sample points.
    u, c : numpy array
        Profile samples.
    du, dc : numpy array
        u' and c' at ``xs``.
    a : float
        Rotation rate in y.
    orientation : float
        Sign of phi' + 2 sin phi for profiles built from phi.
    """

    xs: np.ndarray
    u: np.ndarray
    c: np.ndarray
    du: np.ndarray
    dc: np.ndarray
    a: float = ROTATION_RATE
    orientation: float = 1.0

    @property
    def h(self):
        return float(self.xs[1] - self.xs[0])

    @property
    def radius_factor(self):
        """e^{u/2}."""
        return np.exp(0.5 * self.u)

    def conformality_defect(self):
        """Relative defect of e^u u'^2 / 4 + c'^2 = a^2 e^u."""
        exp_u = np.exp(self.u)
        return np.abs(exp_u * self.du ** 2 / 4.0 + self.dc ** 2 - self.a ** 2 * exp_u) / (
            self.a ** 2 * exp_u
        )

    def to_dict(self):
        return {
            "x": self.xs.tolist(),
            "u": self.u.tolist(),
            "c": self.c.tolist(),
            "du": self.du.tolist(),
            "dc": self.dc.tolist(),
            "a": self.a,
        }


def profile_from_phi(solution, tolerance=IDENTITY_TOLERANCE):
    """Profile (u, c) of the HIMC surface of revolution attached to phi.

    Parameters
    ----------
    solution : PhiSolution
        Non degenerate Painleve III solution.
    tolerance : float
        Tolerance of the identities u' = 4 cos phi and
        c' = 2 e^{u/2} sin phi, relative to max(1, |value|).

    Returns
    -------
    profile : RevolutionProfile

    Raises
    ------
    Degenerate
        If phi' + 2 sin phi vanishes or changes sign on the range.
    NotConformal
        If the identities fail.
    """
    xs, phi, dphi, ddphi = solution.xs, solution.phi, solution.dphi, solution.ddphi
    p = dphi + 2.0 * np.sin(phi)
    if np.any(solution.degenerate) or np.any(p == 0.0) or np.ptp(np.sign(p)) > 0:
        first = int(np.argmin(np.abs(p)))
        raise Degenerate(
            "phi' + 2 sin phi vanishes, the surface of revolution is a CMC cylinder.",
            residual=float(np.min(np.abs(p))),
            node=(float(xs[first]), 0.0),
        )
    orientation = float(np.sign(p[0]))
    half = 0.5 * xs * np.abs(p)
    u = 2.0 * np.log(half)
    dp = ddphi + 2.0 * np.cos(phi) * dphi
    du = 2.0 / xs + 2.0 * dp / p
    tension = dphi ** 2 - 4.0 * np.sin(phi) ** 2
    c = -0.25 * xs ** 2 * tension
    dc = -0.5 * xs * tension - 0.25 * xs ** 2 * (
        2.0 * dphi * ddphi - 8.0 * np.sin(phi) * np.cos(phi) * dphi
    )
    defects = {
        "du": np.abs(du - 4.0 * np.cos(phi)) / np.maximum(1.0, np.abs(du)),
        "dc": np.abs(dc - orientation * 2.0 * half * np.sin(phi))
        / np.maximum(1.0, np.abs(dc)),
    }
    for name, defect in defects.items():
        worst = int(np.argmax(defect))
        if defect[worst] > tolerance:
            raise NotConformal(
                f"Profile identity for {name} fails.",
                residual=float(defect[worst]),
                tolerance=tolerance,
                node=(float(xs[worst]), 0.0),
            )
    return RevolutionProfile(
        xs=xs.copy(), u=u, c=c, du=du, dc=dc, a=ROTATION_RATE, orientation=orientation
    )


def profile_grid(profile, y_range, ny, stride=1, offset=0):
    """Grid over the profile samples ``offset::stride`` and ``y_range``."""
    xs = profile.xs[offset::stride]
    y_start, y_end = y_range
    return GridSpec(
        nx=xs.size,
        ny=ny,
        x0=xs[0],
        y0=y_start,
        hx=stride * profile.h,
        hy=(y_end - y_start) / (ny - 1),
    )


def rotation_factor(a, dy):
    """Unit quaternions e^{k a dy / 2}, whose conjugation rotates by a dy."""
    return rotation_about_k(a * np.asarray(dy, dtype=float))


def rotate_rows(row, a, dy):
    """Rows ``row`` rotated about k by a dy for every entry of ``dy``.

    Returns an array of shape ``dy.shape + row.shape``.
    """
    factor = rotation_factor(a, dy)[:, np.newaxis, :]
    return mul_chain(factor, row[np.newaxis], conj(factor))


def surface_from_profile(profile, y_range=(0.0, np.pi), ny=65, stride=1, offset=0):
    """Surface of revolution of a profile.

    Parameters
    ----------
    profile : RevolutionProfile
    y_range : tuple of float
        y interval; pi is a full turn for a = 2.
    ny : int
        Number of y samples.
    stride, offset : int
        The x nodes are the profile samples ``offset::stride``.

    Returns
    -------
    surface : SurfaceGrid
        Image in Im H.
    """
    grid = profile_grid(profile, y_range, ny, stride, offset)
    radius = profile.radius_factor[offset::stride] / profile.a
    height = profile.c[offset::stride] / profile.a
    x, y = grid.coordinates()
    f = np.zeros(grid.shape + (4,))
    f[..., 1] = radius * np.cos(profile.a * y)
    f[..., 2] = radius * np.sin(profile.a * y)
    f[..., 3] = height
    return SurfaceGrid(grid, f)


def revolution_defect(surface, a=ROTATION_RATE):
    """Max deviation of f(x, y) from the rotation by a (y - y0) of the row y0,
    relative to max(1, |f|)."""
    grid = surface.grid
    values = surface.values
    predicted = rotate_rows(values[0], a, grid.ys - grid.y0)
    difference = np.linalg.norm(values - predicted, axis=-1)
    scale = max(1.0, float(np.nanmax(np.linalg.norm(values, axis=-1))))
    return float(np.nanmax(difference)) / scale


def phi_from_surface(
    surface,
    a=ROTATION_RATE,
    revolution_tolerance=REVOLUTION_TOLERANCE,
    conformal_tolerance=CONFORMAL_TOLERANCE,
):
    """Recovers phi from a surface of revolution about the k-axis.

    The reference row y = y0 gives e^{u/2} = a (radius) and c = a (height);
    u' and c' are second order differences, and phi = atan2(c' e^{-u/2} / 2,
    u' / 4) is unwrapped continuously in x.

    Returns
    -------
    solution : PhiSolution
        phi with phi' and phi'' from differences.
    profile : RevolutionProfile

    Raises
    ------
    NotRevolution
        If the surface is not rotationally symmetric with rate ``a``.
    NotConformal
        If sin^2 phi + cos^2 phi differs from 1 by more than
        ``conformal_tolerance``.
    """
    defect = revolution_defect(surface, a)
    if not defect <= revolution_tolerance:
        raise NotRevolution(
            "The surface is not a surface of revolution about the k-axis.",
            residual=defect,
            tolerance=revolution_tolerance,
        )
    grid = surface.grid
    row = surface.values[0]
    xs = grid.xs
    radius = np.hypot(row[:, 1], row[:, 2])
    exp_half_u = a * radius
    c = a * row[:, 3]
    u = 2.0 * np.log(exp_half_u)
    du = np.gradient(u, grid.hx, edge_order=2)
    dc = np.gradient(c, grid.hx, edge_order=2)
    sine = 0.5 * dc / exp_half_u
    cosine = 0.25 * du
    unit_defect = np.abs(sine ** 2 + cosine ** 2 - 1.0)
    worst = int(np.argmax(unit_defect))
    if unit_defect[worst] > conformal_tolerance:
        raise NotConformal(
            "The profile violates sin^2 phi + cos^2 phi = 1.",
            residual=float(unit_defect[worst]),
            tolerance=conformal_tolerance,
            node=(float(xs[worst]), grid.y0),
        )
    raw = np.arctan2(sine, cosine)
    phi = np.unwrap(raw)
    jumps = np.abs(np.diff(raw))
    if np.any(jumps > np.pi):
        warnings.warn("phi was unwrapped across a branch cut; it is defined modulo 2 pi.")
    dphi = np.gradient(phi, grid.hx, edge_order=2)
    ddphi = np.gradient(dphi, grid.hx, edge_order=2)
    _check_positive_xs(xs)
    solution = PhiSolution(xs=xs, phi=phi, dphi=dphi, ddphi=ddphi)
    summary = phi_residual_summary(solution)
    if summary["max"] is not None and summary["max"] > EXTRACTED_RESIDUAL_WARNING:
        warnings.warn(
            f"Extracted phi has a Painleve III residual of {summary['max']:.3e} "
            f"at x = {summary['x_worst']:.6g}."
        )
    profile = RevolutionProfile(xs=xs, u=u, c=c, du=du, dc=dc, a=a)
    return solution, profile


def _check_positive_xs(xs):
    if np.any(xs <= 0.0):
        raise DomainError(
            "phi is only defined for x > 0.", residual=float(np.min(xs))
        )
