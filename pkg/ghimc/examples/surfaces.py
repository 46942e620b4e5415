"""Oracle surfaces with known frame data.

Each example takes a GridSpec and returns a SurfaceGrid; ``EXAMPLES`` maps
the command line names to the builder and a default grid.
"""
import numpy as np

from ..domains import GridSpec
from ..analysis import SurfaceGrid


def _assemble(grid, w=0.0, x=0.0, y=0.0, z=0.0):
    f = np.zeros(grid.shape + (4,))
    for index, component in enumerate((w, x, y, z)):
        f[..., index] = component
    return SurfaceGrid(grid, f)


def plane(grid, kind="imaginary"):
    """Plane f = x i + y j (``"imaginary"``) or f = x + y i (``"complex"``)."""
    x, y = grid.coordinates()
    if kind == "imaginary":
        return _assemble(grid, x=x, y=y)
    elif kind == "complex":
        return _assemble(grid, w=x, x=y)
    raise ValueError(f"Plane kind {kind} is not valid.")


def cylinder(grid, radius=1.0):
    """Cylinder r cos(y/r) i + r sin(y/r) j + x k, with H = -1/(2r)."""
    x, y = grid.coordinates()
    return _assemble(
        grid, x=radius * np.cos(y / radius), y=radius * np.sin(y / radius), z=x
    )


def sphere_chart(grid):
    """Inverse stereographic chart of the unit sphere, N = R = -f, H = -1."""
    x, y = grid.coordinates()
    r2 = x ** 2 + y ** 2
    return _assemble(
        grid, x=2.0 * x / (1.0 + r2), y=2.0 * y / (1.0 + r2), z=(r2 - 1.0) / (1.0 + r2)
    )


def tilted_cylinder(grid, angle=0.25 * np.pi):
    """Unit cylinder in conformal coordinates rotated by ``angle``.

    The coordinates are conformal but not curvature line coordinates.
    """
    x, y = grid.coordinates()
    s = np.cos(angle) * x + np.sin(angle) * y
    t = -np.sin(angle) * x + np.cos(angle) * y
    return _assemble(grid, x=np.cos(t), y=np.sin(t), z=s)


def cone(grid, phi0=0.25 * np.pi):
    """Surface of revolution with constant angle phi0.

    f = (e^{alpha x} / 2)(cos 2y i + sin 2y j) + (tan(phi0) e^{alpha x} / 2) k
    with alpha = 2 cos phi0; constant phi does not solve Painleve III, so
    the cone is not GHIMC.
    """
    x, y = grid.coordinates()
    alpha = 2.0 * np.cos(phi0)
    scale = 0.5 * np.exp(alpha * x)
    return _assemble(
        grid,
        x=scale * np.cos(2.0 * y),
        y=scale * np.sin(2.0 * y),
        z=np.tan(phi0) * scale,
    )


def revolution_cylinder(grid, radius=0.5):
    """Cylinder rotating at rate 2, r (cos 2y i + sin 2y j) + 2 r x k.

    Its angle is phi = pi / 2, the degenerate constant mean curvature case.
    """
    x, y = grid.coordinates()
    return _assemble(
        grid,
        x=radius * np.cos(2.0 * y),
        y=radius * np.sin(2.0 * y),
        z=2.0 * radius * x,
    )


EXAMPLES = {
    "plane": (plane, {"x_range": (-1.0, 1.0), "y_range": (-1.0, 1.0), "nx": 41, "ny": 41}),
    "cylinder": (cylinder, {"x_range": (-1.0, 1.0), "y_range": (-1.0, 1.0), "nx": 101, "ny": 101}),
    "sphere": (sphere_chart, {"x_range": (-0.5, 0.5), "y_range": (-0.5, 0.5), "nx": 101, "ny": 101}),
    "tilted-cylinder": (
        tilted_cylinder,
        {"x_range": (-1.0, 1.0), "y_range": (-1.0, 1.0), "nx": 101, "ny": 101},
    ),
    "cone": (cone, {"x_range": (0.0, 1.0), "y_range": (0.0, 1.0), "nx": 101, "ny": 101}),
    "revolution-cylinder": (
        revolution_cylinder,
        {"x_range": (1.0, 2.0), "y_range": (0.0, 1.0), "nx": 101, "ny": 101},
    ),
}


def example_surface(name, grid=None):
    """Builds the example ``name`` on ``grid`` (its default grid if None)."""
    if name not in EXAMPLES:
        raise ValueError(f"Example {name} is not valid, use one of {sorted(EXAMPLES)}.")
    builder, default_grid = EXAMPLES[name]
    if grid is None:
        grid = GridSpec.from_bounds(**default_grid)
    return builder(grid)
