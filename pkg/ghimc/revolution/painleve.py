"""Painleve III equation in trigonometric form,

    x (phi'' - 2 sin 2phi) + phi' + 2 sin phi = 0,

integrated as phi'' = 2 sin 2phi - (phi' + 2 sin phi) / x.
"""
from dataclasses import dataclass

import numpy as np

from ..solvers import rk4_step
from ..utils.errors import DomainError, Blowup
from ..utils.utils import display_progress


H_ODE = 1e-3
BLOWUP_BOUND = 1e8
DEGENERACY_TOLERANCE = 1e-8


@dataclass
class PhiSolution:
    """Samples of a solution phi of the Painleve III equation.

    Attributes
    ----------
    xs : numpy array
        Strictly increasing positive sample points.
    phi, dphi, ddphi : numpy array
        phi, phi' and phi'' at ``xs``.
    degenerate : numpy array of bool
        Samples where |phi' + 2 sin phi| is below the degeneracy tolerance.
    """

    xs: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    ddphi: np.ndarray
    degenerate: np.ndarray = None

    def __post_init__(self):
        self.xs = np.asarray(self.xs, dtype=float)
        self.phi = np.asarray(self.phi, dtype=float)
        self.dphi = np.asarray(self.dphi, dtype=float)
        self.ddphi = np.asarray(self.ddphi, dtype=float)
        if self.degenerate is None:
            self.degenerate = degeneracy_mask(self.phi, self.dphi)

    @property
    def h(self):
        return float(self.xs[1] - self.xs[0])

    def residual(self):
        return piii_residual(self.phi, self.dphi, self.ddphi, self.xs)

    def to_dict(self):
        return {
            "x": self.xs.tolist(),
            "phi": self.phi.tolist(),
            "dphi": self.dphi.tolist(),
            "ddphi": self.ddphi.tolist(),
            "degenerate": self.degenerate.tolist(),
        }


def degeneracy_mask(phi, dphi, tolerance=DEGENERACY_TOLERANCE):
    return np.abs(np.asarray(dphi) + 2.0 * np.sin(phi)) < tolerance


def _check_positive(x, name="x"):
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise DomainError(
            f"Painleve III is posed on {name} > 0.", residual=float(np.min(x))
        )


def piii_residual(phi, dphi, ddphi, x):
    """x phi'' - 2x sin 2phi + phi' + 2 sin phi.

    Raises
    ------
    DomainError
        If any x <= 0.
    """
    _check_positive(x)
    x = np.asarray(x, dtype=float)
    return x * ddphi - 2.0 * x * np.sin(2.0 * phi) + dphi + 2.0 * np.sin(phi)


def piii_rhs(x, state):
    """(phi, phi') -> (phi', phi'')."""
    phi, dphi = state
    return np.array([dphi, 2.0 * np.sin(2.0 * phi) - (dphi + 2.0 * np.sin(phi)) / x])


def piii_integrate(
    x_start,
    phi0,
    dphi0,
    x_end,
    h_ode=H_ODE,
    blowup=BLOWUP_BOUND,
    degeneracy_tolerance=DEGENERACY_TOLERANCE,
    progress=False,
):
    """Integrates Painleve III with the classic RK4 scheme.

    Parameters
    ----------
    x_start : float
        Point carrying the initial data, positive.
    phi0, dphi0 : float
        phi and phi' at ``x_start``.
    x_end : float
        End of the integration, positive; may lie on either side of
        ``x_start``.
    h_ode : float
        Largest step; the step is shrunk so that ``x_end`` is hit exactly.
    blowup : float
        Bound on |phi| and |phi'| beyond which the integration stops.
    degeneracy_tolerance : float
        Threshold of |phi' + 2 sin phi| for the degeneracy mask.
    progress : bool
        Whether to display progress.

    Returns
    -------
    solution : PhiSolution
        Samples ordered by increasing x.

    Raises
    ------
    DomainError
        If ``x_start`` or ``x_end`` is not positive.
    Blowup
        If the solution leaves the bound or stops being finite.
    """
    _check_positive(x_start, "x_start")
    _check_positive(x_end, "x_end")
    if not h_ode > 0.0:
        raise DomainError(f"Step h_ode must be positive, got {h_ode}.")
    steps = max(1, int(np.ceil(abs(x_end - x_start) / h_ode - 1e-9)))
    xs = np.linspace(x_start, x_end, steps + 1)
    h = (x_end - x_start) / steps
    states = np.empty((steps + 1, 2))
    states[0] = (phi0, dphi0)
    for index in range(steps):
        states[index + 1] = rk4_step(piii_rhs, xs[index], states[index], h)
        if not np.all(np.isfinite(states[index + 1])) or np.max(
            np.abs(states[index + 1])
        ) > blowup:
            raise Blowup(
                f"Painleve III solution blew up at x = {xs[index + 1]:.6g}.",
                residual=float(np.max(np.abs(states[index + 1]))),
                tolerance=blowup,
            )
        if progress and (index + 1) % 100 == 0:
            display_progress(xs[index + 1], x_end)
    if h < 0.0:
        xs = xs[::-1]
        states = states[::-1]
    phi, dphi = states[:, 0], states[:, 1]
    ddphi = piii_rhs(xs, (phi, dphi))[1]
    return PhiSolution(
        xs=xs,
        phi=phi,
        dphi=dphi,
        ddphi=ddphi,
        degenerate=degeneracy_mask(phi, dphi, degeneracy_tolerance),
    )


def phi_residual_summary(solution, margin=2):
    """Max and mean of |PIII residual| away from the ``margin`` end samples."""
    residual = np.abs(solution.residual())
    if residual.size > 2 * margin:
        inner = slice(margin, residual.size - margin)
    else:
        inner = slice(None)
    values = residual[inner]
    xs = solution.xs[inner]
    finite = np.isfinite(values)
    if not finite.any():
        return {"max": None, "mean": None, "x_worst": None}
    worst = int(np.argmax(np.where(finite, values, -np.inf)))
    return {
        "max": float(values[worst]),
        "mean": float(np.mean(values[finite])),
        "x_worst": float(xs[worst]),
    }
