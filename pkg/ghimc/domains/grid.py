from dataclasses import dataclass

import numpy as np

from ..quaternion import as_quaternion, mul, conj, norm
from ..utils.errors import InvalidGrid, GridMismatch


BOUNDARY_MARGIN = 4


@dataclass(frozen=True)
class GridSpec:
    """Uniform rectangular grid carrying the conformal coordinate z = x + iy.

    Fields on the grid are numpy arrays of shape ``(ny, nx, 4)`` indexed as
    ``[j, i]``, row ``j`` being the line y = y0 + j hy.

    Parameters
    ----------
    nx, ny : int
        Number of samples along x and y, at least 5 each.
    x0, y0 : float
        Coordinates of node (0, 0).
    hx, hy : float
        Positive spacings.
    """

    nx: int
    ny: int
    x0: float
    y0: float
    hx: float
    hy: float

    def __post_init__(self):
        if int(self.nx) < 5 or int(self.ny) < 5:
            raise InvalidGrid(
                f"Grids need at least 5 nodes per direction, got nx={self.nx}, ny={self.ny}."
            )
        if not (self.hx > 0.0 and self.hy > 0.0):
            raise InvalidGrid(
                f"Grid spacings must be positive, got hx={self.hx}, hy={self.hy}."
            )
        object.__setattr__(self, "nx", int(self.nx))
        object.__setattr__(self, "ny", int(self.ny))
        for name in ("x0", "y0", "hx", "hy"):
            object.__setattr__(self, name, float(getattr(self, name)))

    @classmethod
    def from_bounds(cls, x_range, y_range, nx, ny):
        """Grid with ``nx`` x ``ny`` nodes spanning the closed ranges."""
        (x_start, x_end), (y_start, y_end) = x_range, y_range
        return cls(
            nx=nx,
            ny=ny,
            x0=x_start,
            y0=y_start,
            hx=(x_end - x_start) / (nx - 1),
            hy=(y_end - y_start) / (ny - 1),
        )

    @classmethod
    def from_dict(cls, dictionary):
        try:
            return cls(**{key: dictionary[key] for key in ("nx", "ny", "x0", "y0", "hx", "hy")})
        except KeyError as missing:
            raise InvalidGrid(f"Grid description is missing the key {missing}.")

    def to_dict(self):
        return {
            "nx": self.nx,
            "ny": self.ny,
            "x0": self.x0,
            "y0": self.y0,
            "hx": self.hx,
            "hy": self.hy,
        }

    @property
    def shape(self):
        return (self.ny, self.nx)

    @property
    def xs(self):
        return self.x0 + self.hx * np.arange(self.nx)

    @property
    def ys(self):
        return self.y0 + self.hy * np.arange(self.ny)

    @property
    def h(self):
        return max(self.hx, self.hy)

    @property
    def diameter(self):
        return float(np.hypot((self.nx - 1) * self.hx, (self.ny - 1) * self.hy))

    def coordinates(self):
        """Arrays ``x, y`` of shape ``(ny, nx)``."""
        return np.meshgrid(self.xs, self.ys)

    def node(self, i, j):
        """Coordinates (x, y) of node column ``i``, row ``j``."""
        return (self.x0 + i * self.hx, self.y0 + j * self.hy)

    def center_node(self):
        return (self.nx // 2, self.ny // 2)

    def interior(self, margin=BOUNDARY_MARGIN):
        """Boolean mask of the nodes at least ``margin`` rings inside."""
        mask = np.zeros(self.shape, dtype=bool)
        if 2 * margin < self.nx and 2 * margin < self.ny:
            mask[margin:self.ny - margin, margin:self.nx - margin] = True
        return mask

    def check_same(self, other):
        if self != other:
            raise GridMismatch(f"Fields live on different grids: {self} and {other}.")


def _values(field):
    if isinstance(field, (ScalarField, TwoForm)):
        return field.values
    return np.asarray(field, dtype=float)


class ScalarField:
    """Quaternion valued function sampled at the nodes of a grid.

    Parameters
    ----------
    grid : GridSpec
        Sampling grid.
    values : array_like
        Array of shape ``(ny, nx, 4)``; real arrays of shape ``(ny, nx)``
        are promoted to real quaternions.
    mask : array_like of bool, optional
        True on nodes where the field is undefined. Masked values are NaN.
    """

    def __init__(self, grid, values, mask=None):
        values = np.asarray(values, dtype=float)
        if values.shape == grid.shape:
            values = values[..., np.newaxis] * np.array([1.0, 0.0, 0.0, 0.0])
        values = as_quaternion(values)
        if values.shape != grid.shape + (4,):
            raise GridMismatch(
                f"Field of shape {values.shape} does not fit grid {grid.shape}."
            )
        if mask is None:
            mask = ~np.all(np.isfinite(values), axis=-1)
        mask = np.asarray(mask, dtype=bool)
        values = values.copy()
        values[mask] = np.nan
        self.grid = grid
        self.values = values
        self.mask = mask

    def __repr__(self):
        return f"{type(self).__name__}(grid={self.grid}, masked={int(self.mask.sum())})"

    def at(self, i, j):
        """Value at node column ``i``, row ``j``."""
        return self.values[j, i].copy()

    @property
    def masked_fraction(self):
        return float(np.mean(self.mask))

    def map(self, function):
        """New field with ``function`` applied to the value array."""
        return ScalarField(self.grid, function(self.values))


class OneForm:
    """H-valued one-form stored as its components on the coordinate fields.

    Parameters
    ----------
    grid : GridSpec
        Sampling grid.
    cx, cy : array_like
        omega(d/dx) and omega(d/dy), arrays of shape ``(ny, nx, 4)``.
    """

    def __init__(self, grid, cx, cy):
        cx = as_quaternion(cx)
        cy = as_quaternion(cy)
        for component in (cx, cy):
            if component.shape != grid.shape + (4,):
                raise GridMismatch(
                    f"Component of shape {component.shape} does not fit grid {grid.shape}."
                )
        self.grid = grid
        self.cx = cx
        self.cy = cy

    def _check(self, other):
        self.grid.check_same(other.grid)

    def __add__(self, other):
        self._check(other)
        return OneForm(self.grid, self.cx + other.cx, self.cy + other.cy)

    def __sub__(self, other):
        self._check(other)
        return OneForm(self.grid, self.cx - other.cx, self.cy - other.cy)

    def __neg__(self):
        return OneForm(self.grid, -self.cx, -self.cy)

    def scale(self, factor):
        return OneForm(self.grid, factor * self.cx, factor * self.cy)

    def lmul(self, field):
        """The form q omega for a quaternion field (or constant) q."""
        q = _values(field)
        return OneForm(self.grid, mul(q, self.cx), mul(q, self.cy))

    def rmul(self, field):
        """The form omega q."""
        q = _values(field)
        return OneForm(self.grid, mul(self.cx, q), mul(self.cy, q))

    def conj(self):
        return OneForm(self.grid, conj(self.cx), conj(self.cy))

    def pointwise_norm(self):
        """max(|omega(d/dx)|, |omega(d/dy)|) at each node."""
        return np.maximum(norm(self.cx), norm(self.cy))


class TwoForm:
    """H-valued two-form stored as the coefficient of dx ^ dy."""

    def __init__(self, grid, density):
        density = as_quaternion(density)
        if density.shape != grid.shape + (4,):
            raise GridMismatch(
                f"Density of shape {density.shape} does not fit grid {grid.shape}."
            )
        self.grid = grid
        self.density = density

    @property
    def values(self):
        return self.density

    def pointwise_norm(self):
        return norm(self.density)
