"""Rotation equivariant Darboux transforms of HIMC surfaces of revolution.

On a surface of revolution f(x, y) = E(y - y0) F(x) E(y - y0)^-1, with
E(t) = e^{k a t / 2}, the Darboux system separates under the ansatz

    lambda_inf = E(y - y0) Lambda(x) e^{-sigma (y - y0)},
    lambda_L   = E(y - y0) M(x) e^{-sigma (y - y0)},

for a constant quaternion sigma. The y equations become the algebraic
constraints

    (a/2) k Lambda - Lambda sigma = -F_y M,
    (a/2) k M - M sigma = rho F_y^-1 Lambda,

which the x flow Lambda' = -F_x M, M' = -rho F_x^-1 Lambda preserves, and
f_hat = E (Lambda M^-1 + F) E^-1 is again a surface of revolution.
"""
from collections import namedtuple
from dataclasses import dataclass
import warnings

import numpy as np

from ..quaternion import ONE, K, as_quaternion, mul, mul_chain, inverse, norm, masked_inverse
from ..domains import BOUNDARY_MARGIN
from ..analysis import SurfaceGrid, mean_curvature
from ..solvers import sampled_rk4_step, march
from ..transforms import (
    CLASSICALITY_TOLERANCE,
    MEAN_CURVATURE_FACTOR,
    GHIMC_TOLERANCE,
    DENOMINATOR_FACTOR,
    dtnr_check,
)
from ..utils.errors import (
    GhimcError,
    NotClassical,
    SeedConstraintViolated,
    ZeroDenominator,
)
from ..utils.utils import display, display_residual
from .painleve import phi_residual_summary
from .profile import (
    CONFORMAL_TOLERANCE,
    IDENTITY_TOLERANCE,
    REVOLUTION_TOLERANCE,
    RevolutionProfile,
    profile_from_phi,
    surface_from_profile,
    phi_from_surface,
    rotation_factor,
    rotate_rows,
)


SEED_TOLERANCE = 1e-8
PROPAGATION_TOLERANCE = 1e-6
PIII_TOLERANCE = 1e-3

EquivariantSeed = namedtuple("EquivariantSeed", ["lambda0", "m0", "sigma"])


def revolution_coefficients(profile, y0=0.0):
    """f_x and f_y along the row y = y0 from the analytic profile derivatives.

    Returns
    -------
    fx, fy : numpy array
        Arrays of shape ``(n, 4)`` over the profile samples.
    """
    a = profile.a
    radius_factor = profile.radius_factor
    fx = np.zeros(profile.xs.shape + (4,))
    fx[:, 1] = radius_factor * profile.du / (2.0 * a)
    fx[:, 3] = profile.dc / a
    fy = np.zeros_like(fx)
    fy[:, 2] = radius_factor
    factor = rotation_factor(a, y0)
    return mul_chain(factor, fx, inverse(factor)), mul_chain(factor, fy, inverse(factor))


def seed_sigma(a, rho, lambda0, m0, fy0):
    """sigma solving the second constraint for given seeds."""
    half_k = 0.5 * a * K
    return mul(inverse(m0), mul(half_k, m0) - rho * mul(inverse(fy0), lambda0))


def seed_constraints(a, rho, lambdas, ms, sigma, fy):
    """Pointwise violations of the two algebraic constraints."""
    half_k = 0.5 * a * K
    first = mul(half_k, lambdas) - mul(lambdas, sigma) + mul(fy, ms)
    second = mul(half_k, ms) - mul(ms, sigma) - rho * mul(inverse(fy), lambdas)
    return norm(first), norm(second)


def equivariant_seed(profile, rho, angle=0.0, start_index=0, y0=0.0):
    """Admissible seeds with M0 = 1 and imaginary Lambda0 = T0.

    In the frame of the row y0, T0 = t1 i + t3 k lies on the circle

        (t1 - a e / (2 rho))^2 + t3^2 = e^2 (4 rho + a^2) / (4 rho^2),

    e = e^{u/2} at the start sample, parametrized by ``angle``. For rho = 0
    the circle degenerates to the line t1 = -e / a and ``angle`` is t3.

    Returns
    -------
    seed : EquivariantSeed

    Raises
    ------
    SeedConstraintViolated
        If 4 rho + a^2 < 0, where no imaginary seed exists.
    """
    a = profile.a
    e = float(profile.radius_factor[start_index])
    if rho == 0.0:
        t1, t3 = -e / a, float(angle)
    else:
        discriminant = 4.0 * rho + a ** 2
        if discriminant < 0.0:
            raise SeedConstraintViolated(
                "No imaginary equivariant seed exists for this rho.",
                residual=discriminant,
                tolerance=0.0,
            )
        center = a * e / (2.0 * rho)
        radius = e * np.sqrt(discriminant) / (2.0 * abs(rho))
        t1 = center + radius * np.cos(angle)
        t3 = radius * np.sin(angle)
    factor = rotation_factor(a, y0)
    lambda0 = mul_chain(factor, as_quaternion([0.0, t1, 0.0, t3]), inverse(factor))
    _, fy = revolution_coefficients(profile, y0)
    sigma = seed_sigma(a, rho, lambda0, ONE, fy[start_index])
    return EquivariantSeed(lambda0, ONE.copy(), sigma)


def _as_profile(source, revolution_tolerance, conformal_tolerance):
    if isinstance(source, RevolutionProfile):
        return source
    if isinstance(source, SurfaceGrid):
        _, profile = phi_from_surface(
            source,
            revolution_tolerance=revolution_tolerance,
            conformal_tolerance=conformal_tolerance,
        )
        return profile
    raise TypeError(f"Expected a RevolutionProfile or a SurfaceGrid, got {type(source).__name__}.")


@dataclass
class EquivariantDarboux:
    """Result of ``equivariant_darboux_revolution``.

    Attributes
    ----------
    surface : SurfaceGrid
        The surface of revolution on the output grid.
    f_hat : SurfaceGrid
        Its Darboux transform.
    lambdas, ms : numpy array
        Lambda(x) and M(x) at the output x nodes.
    seed : EquivariantSeed
    rho : float
    constraints : dict
        Initial and largest violation of the two constraints.
    """

    surface: SurfaceGrid
    f_hat: SurfaceGrid
    lambdas: np.ndarray
    ms: np.ndarray
    seed: EquivariantSeed
    rho: float
    constraints: dict

    def to_dict(self):
        return {
            "rho": self.rho,
            "lambda0": self.seed.lambda0.tolist(),
            "m0": self.seed.m0.tolist(),
            "sigma": self.seed.sigma.tolist(),
            "constraints": self.constraints,
        }


def equivariant_darboux_revolution(
    source,
    rho,
    lambda0=None,
    m0=None,
    angle=0.0,
    y_range=(0.0, 0.1),
    ny=11,
    start_index=0,
    seed_tolerance=SEED_TOLERANCE,
    propagation_tolerance=PROPAGATION_TOLERANCE,
    denominator_factor=DENOMINATOR_FACTOR,
    revolution_tolerance=REVOLUTION_TOLERANCE,
    conformal_tolerance=CONFORMAL_TOLERANCE,
):
    """Rotation equivariant classical Darboux transform of a surface of
    revolution.

    Lambda and M are integrated with RK4 over pairs of profile samples, the
    sample in between giving the exact midpoint coefficients, so the output
    x nodes are every other profile sample starting at the parity of
    ``start_index``.

    Parameters
    ----------
    source : RevolutionProfile or SurfaceGrid
        Profile with analytic derivatives, or a sampled surface of revolution
        about k whose profile is read off its row y0 with
        ``phi_from_surface``; its x nodes are then the profile samples.
    rho : float
        Spectral parameter.
    lambda0, m0 : array_like, optional
        Seeds at the start sample; ``equivariant_seed`` with ``angle`` is
        used when ``lambda0`` is omitted, and ``m0`` defaults to 1.
    angle : float
        Parameter of the admissible seed family.
    y_range : tuple of float
        y interval of the output grid.
    ny : int
        Number of y nodes.
    start_index : int
        Profile sample carrying the seeds.
    seed_tolerance : float
        Largest accepted violation of the constraints by the seeds,
        relative to max(1, e^{u/2}).
    propagation_tolerance : float
        Largest accepted violation of the constraints along x, relative to
        max(1, e^{u/2} |M|).
    denominator_factor : float
        Nodes where |M| falls below this factor times max |M| are masked.
    revolution_tolerance, conformal_tolerance : float
        Tolerances of ``phi_from_surface`` for a sampled ``source``.

    Returns
    -------
    transform : EquivariantDarboux

    Raises
    ------
    SeedConstraintViolated
        If the seeds violate the constraints or the x flow drifts away
        from them.
    ZeroDenominator
        If M vanishes on every node.
    NotRevolution, NotConformal
        From ``phi_from_surface`` for a sampled ``source``.
    """
    profile = _as_profile(source, revolution_tolerance, conformal_tolerance)
    a = profile.a
    y0 = float(y_range[0])
    fx, fy = revolution_coefficients(profile, y0)
    if lambda0 is None:
        seed = equivariant_seed(profile, rho, angle, start_index, y0)
    else:
        lambda0 = as_quaternion(lambda0)
        m0 = ONE.copy() if m0 is None else as_quaternion(m0)
        sigma = seed_sigma(a, rho, lambda0, m0, fy[start_index])
        seed = EquivariantSeed(lambda0, m0, sigma)
    first, second = seed_constraints(
        a, rho, seed.lambda0, seed.m0, seed.sigma, fy[start_index]
    )
    scale = max(1.0, float(profile.radius_factor[start_index]))
    initial = max(float(first), float(second)) / scale
    if not initial <= seed_tolerance:
        raise SeedConstraintViolated(
            "Seeds violate the equivariance constraints.",
            residual=initial,
            tolerance=seed_tolerance,
            node=(float(profile.xs[start_index]), y0),
        )

    offset = start_index % 2
    start_node = start_index // 2
    samples = np.arange(offset, profile.xs.size, 2)
    fx_inverse = inverse(fx)
    h = 2.0 * profile.h

    def rhs(coefficients, state):
        f_x, f_x_inverse = coefficients
        return np.stack(
            [-mul(f_x, state[1]), -rho * mul(f_x_inverse, state[0])]
        )

    def step(state, index, next_index):
        current, following = samples[index], samples[next_index]
        middle = offset + index + next_index
        signed_h = h if next_index > index else -h
        return sampled_rk4_step(
            rhs,
            state,
            (fx[current], fx_inverse[current]),
            (fx[middle], fx_inverse[middle]),
            (fx[following], fx_inverse[following]),
            signed_h,
        )

    states = np.empty((samples.size, 2, 4))
    states[start_node] = (seed.lambda0, seed.m0)
    states = march(step, states, start_node)
    lambdas, ms = states[:, 0], states[:, 1]

    first, second = seed_constraints(a, rho, lambdas, ms, seed.sigma, fy[samples])
    scales = np.maximum(1.0, profile.radius_factor[samples] * np.maximum(1.0, norm(ms)))
    violation = np.maximum(first, second) / scales
    constraints = {
        "initial": initial,
        "max": float(np.max(violation)),
        "x_worst": float(profile.xs[samples][np.argmax(violation)]),
    }
    if not constraints["max"] <= propagation_tolerance:
        raise SeedConstraintViolated(
            "The x flow does not preserve the equivariance constraints.",
            residual=constraints["max"],
            tolerance=propagation_tolerance,
            node=(constraints["x_worst"], y0),
        )

    m_scale = float(np.max(norm(ms)))
    m_inverse, mask = masked_inverse(ms, denominator_factor * m_scale)
    if m_scale == 0.0 or mask.all():
        raise ZeroDenominator("M vanishes on every node.", residual=m_scale)
    if mask.any():
        warnings.warn(f"{int(mask.sum())} node(s) with vanishing M masked.")

    surface = surface_from_profile(profile, y_range, ny, stride=2, offset=offset)
    grid = surface.grid
    row = mul(lambdas, m_inverse) + surface.values[0]
    f_hat = SurfaceGrid(grid, rotate_rows(row, a, grid.ys - y0))
    return EquivariantDarboux(
        surface=surface,
        f_hat=f_hat,
        lambdas=lambdas,
        ms=ms,
        seed=seed,
        rho=float(rho),
        constraints=constraints,
    )


@dataclass
class PiiiTransform:
    """Transformed Painleve III solution with its certificate.

    Attributes
    ----------
    phi_hat : PhiSolution
    profile_hat : RevolutionProfile
    transform : EquivariantDarboux
    dtnr : TransformReport
    certificate : dict
        Stage by stage record, JSON ready; ``checks`` holds the outcome of
        every gated stage.
    """

    phi_hat: object
    profile_hat: object
    transform: EquivariantDarboux
    dtnr: object
    certificate: dict


def _transform_checks(report, summary, piii_tolerance):
    """(residual, tolerance) of every gated stage of ``piii_transform``."""
    ghimc = None if isinstance(report.ghimc, dict) else report.ghimc.max
    return {
        "classicality": (report["classicality"].max, report.tolerance),
        "mean_curvature": (
            report.h_deviation,
            report.mean_curvature_factor * report.h_scale,
        ),
        "ghimc_f_hat": (ghimc, report.ghimc_tolerance),
        "piii_residual": (summary["max"], piii_tolerance),
    }


def _passes(residual, tolerance):
    return residual is not None and bool(np.isfinite(residual) and residual <= tolerance)


def piii_transform(
    solution,
    rho,
    angle=0.0,
    lambda0=None,
    m0=None,
    y_range=(0.0, 0.1),
    ny=11,
    start_index=0,
    classicality_tolerance=CLASSICALITY_TOLERANCE,
    mean_curvature_factor=MEAN_CURVATURE_FACTOR,
    ghimc_tolerance=GHIMC_TOLERANCE,
    piii_tolerance=PIII_TOLERANCE,
    seed_tolerance=SEED_TOLERANCE,
    propagation_tolerance=PROPAGATION_TOLERANCE,
    identity_tolerance=IDENTITY_TOLERANCE,
    conformal_tolerance=CONFORMAL_TOLERANCE,
    margin=BOUNDARY_MARGIN,
):
    """Darboux transform of a Painleve III solution.

    phi -> surface of revolution -> equivariant classical Darboux transform
    -> phi_hat. phi_hat is only returned when the transform is classical
    (R_hat = -T^-1 N T and H_hat = H), f_hat is GHIMC and phi_hat solves
    Painleve III, each within its tolerance.

    Returns
    -------
    result : PiiiTransform

    Raises
    ------
    NotClassical
        If a gated stage fails; the certificate is attached as
        ``error.report``.
    SeedConstraintViolated
        If the seeds or their propagation along x violate the equivariance
        constraints.
    Degenerate, NotConformal
        From the profile of ``solution`` or the extraction of phi_hat.
    """
    display("Building the surface of revolution profile")
    profile = profile_from_phi(solution, identity_tolerance)
    display(f"Equivariant Darboux transform with rho = {rho}")
    transform = equivariant_darboux_revolution(
        profile,
        rho,
        lambda0=lambda0,
        m0=m0,
        angle=angle,
        y_range=y_range,
        ny=ny,
        start_index=start_index,
        seed_tolerance=seed_tolerance,
        propagation_tolerance=propagation_tolerance,
    )
    sphere = mean_curvature(transform.surface)
    report = dtnr_check(
        transform.surface,
        sphere,
        transform.f_hat,
        tolerance=classicality_tolerance,
        margin=margin,
        mean_curvature_factor=mean_curvature_factor,
        ghimc_tolerance=ghimc_tolerance,
    )
    for residual in report.residuals.values():
        display_residual(residual)
    dtnr = report.to_dict()
    certificate = {
        "rho": float(rho),
        "input_piii_residual": phi_residual_summary(solution),
        "profile_conformality": float(np.max(profile.conformality_defect())),
        "equivariant": transform.to_dict(),
        "dtnr": dtnr,
        "ghimc_f_hat": dtnr["ghimc_f_hat"],
    }
    display("Extracting phi from the transformed surface")
    try:
        phi_hat, profile_hat = phi_from_surface(
            transform.f_hat, conformal_tolerance=conformal_tolerance
        )
    except GhimcError as error:
        certificate["piii_residual"] = error.to_dict()
        error.report = certificate
        raise
    summary = phi_residual_summary(phi_hat)
    certificate["piii_residual"] = summary

    checks = _transform_checks(report, summary, piii_tolerance)
    certificate["checks"] = {
        name: _passes(residual, tolerance) for name, (residual, tolerance) in checks.items()
    }
    failed = [name for name, passed in certificate["checks"].items() if not passed]
    if failed:
        residual, tolerance = checks[failed[0]]
        raise NotClassical(
            f"The equivariant transform fails {', '.join(failed)}.",
            residual=residual,
            tolerance=tolerance,
            report=certificate,
        )
    return PiiiTransform(
        phi_hat=phi_hat,
        profile_hat=profile_hat,
        transform=transform,
        dtnr=report,
        certificate=certificate,
    )


def piii_transform_family(solution, rhos, **kwargs):
    """``piii_transform`` over several spectral parameters.

    Returns
    -------
    results : list of tuple
        ``(rho, PiiiTransform or None, error dict or None)``.
    """
    results = []
    for rho in rhos:
        try:
            results.append((float(rho), piii_transform(solution, rho, **kwargs), None))
        except GhimcError as error:
            results.append((float(rho), None, error.to_dict()))
    return results
