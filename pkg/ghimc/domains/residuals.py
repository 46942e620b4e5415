from dataclasses import dataclass, field

import numpy as np

from .grid import BOUNDARY_MARGIN


@dataclass
class ResidualReport:
    """Max-norm summary of a pointwise residual over the interior nodes.

    Attributes
    ----------
    name : str
        What was measured.
    max, mean : float
        Max-norm and mean over the valid interior nodes. NaN when no
        node is valid.
    grid : dict
        Grid description the residual was measured on.
    h : float
        Largest grid spacing.
    masked_fraction : float
        Fraction of interior nodes excluded because the residual is not
        defined there (masked inputs).
    worst_node : tuple or None
        Coordinates (x, y) of the node attaining the maximum.
    components : dict
        Optional sub-reports, keyed by name.
    """

    name: str
    max: float
    mean: float
    grid: dict
    h: float
    masked_fraction: float
    worst_node: tuple = None
    components: dict = field(default_factory=dict)

    def passes(self, tolerance):
        return bool(np.isfinite(self.max) and self.max <= tolerance)

    def to_dict(self):
        dictionary = {
            "name": self.name,
            "max": _finite_or_none(self.max),
            "mean": _finite_or_none(self.mean),
            "grid": self.grid,
            "h": self.h,
            "masked_fraction": self.masked_fraction,
            "worst_node": None if self.worst_node is None else list(self.worst_node),
        }
        if self.components:
            dictionary["components"] = {
                key: value.to_dict() for key, value in sorted(self.components.items())
            }
        return dictionary


def _finite_or_none(value):
    value = float(value)
    return value if np.isfinite(value) else None


def residual_report(name, pointwise, grid, margin=BOUNDARY_MARGIN, mask=None):
    """Builds a ResidualReport from a pointwise (ny, nx) residual.

    Parameters
    ----------
    name : str
        Name of the residual.
    pointwise : numpy array
        Nonnegative residual per node, NaN where undefined.
    grid : GridSpec
        Grid of the residual.
    margin : int
        Number of boundary rings left out.
    mask : numpy array of bool, optional
        Extra nodes to leave out.

    Returns
    -------
    report : ResidualReport
    """
    pointwise = np.asarray(pointwise, dtype=float)
    interior = grid.interior(margin)
    valid = interior & np.isfinite(pointwise)
    if mask is not None:
        valid &= ~np.asarray(mask, dtype=bool)
    interior_count = max(int(interior.sum()), 1)
    masked_fraction = 1.0 - float(valid.sum()) / interior_count
    if not valid.any():
        return ResidualReport(
            name, np.nan, np.nan, grid.to_dict(), grid.h, masked_fraction
        )
    values = np.where(valid, pointwise, -np.inf)
    j, i = np.unravel_index(np.argmax(values), values.shape)
    return ResidualReport(
        name=name,
        max=float(pointwise[j, i]),
        mean=float(np.mean(pointwise[valid])),
        grid=grid.to_dict(),
        h=grid.h,
        masked_fraction=masked_fraction,
        worst_node=grid.node(int(i), int(j)),
    )


def combined_report(name, reports):
    """Report whose max is the largest max among ``reports``."""
    reports = list(reports)
    maxima = [report.max for report in reports if np.isfinite(report.max)]
    means = [report.mean for report in reports if np.isfinite(report.mean)]
    worst = None
    if maxima:
        worst = max(
            (report for report in reports if np.isfinite(report.max)),
            key=lambda report: report.max,
        ).worst_node
    first = reports[0]
    return ResidualReport(
        name=name,
        max=max(maxima) if maxima else np.nan,
        mean=max(means) if means else np.nan,
        grid=first.grid,
        h=first.h,
        masked_fraction=max(report.masked_fraction for report in reports),
        worst_node=worst,
        components={report.name: report for report in reports},
    )
