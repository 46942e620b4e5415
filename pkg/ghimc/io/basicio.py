import json
import os
import warnings

import numpy as np

from ..domains import GridSpec
from ..analysis import SurfaceGrid
from ..utils.errors import ParseError, InvalidGrid


IMAGINARY_TOLERANCE = 1e-8
MESH_FORMATS = ("obj", "ply")


def _check_folder(file_name):
    folder = os.path.dirname(file_name)
    if folder:
        os.makedirs(folder, exist_ok=True)


def to_jsonable(item):
    """Converts reports, numpy values and NaN into plain JSON values.

    Objects with a ``to_dict`` method are converted through it, non finite
    floats become None.
    """
    if hasattr(item, "to_dict"):
        return to_jsonable(item.to_dict())
    if isinstance(item, dict):
        return {str(key): to_jsonable(value) for key, value in item.items()}
    if isinstance(item, (list, tuple)):
        return [to_jsonable(value) for value in item]
    if isinstance(item, np.ndarray):
        return to_jsonable(item.tolist())
    if isinstance(item, (bool, np.bool_)):
        return bool(item)
    if isinstance(item, (int, np.integer)):
        return int(item)
    if isinstance(item, (float, np.floating)):
        value = float(item)
        return value if np.isfinite(value) else None
    return item


def _write_json(dictionary, file_name):
    _check_folder(file_name)
    with open(file_name, "w") as f:
        json.dump(to_jsonable(dictionary), f, sort_keys=True, indent=2)
        f.write("\n")


def _read_json(file_name):
    try:
        with open(file_name, "r") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ParseError(f"File {file_name} does not exist.")
    except json.JSONDecodeError as error:
        raise ParseError(f"File {file_name} is not valid JSON: {error.msg}.")


def surface_to_dict(surface):
    """SurfaceGrid JSON schema: grid description and row-major f values."""
    values = surface.values.reshape(-1, 4)
    f = [
        None if masked else [float(component) for component in value]
        for value, masked in zip(values, surface.mask.reshape(-1))
    ]
    return {"grid": surface.grid.to_dict(), "f": f}


def surface_from_dict(dictionary):
    """Builds a SurfaceGrid from the JSON schema written by ``save_surface``.

    Raises
    ------
    ParseError
        If the grid or the values are missing or malformed.
    """
    if not isinstance(dictionary, dict) or "grid" not in dictionary or "f" not in dictionary:
        raise ParseError("Surface files need a 'grid' and an 'f' entry.")
    try:
        grid = GridSpec.from_dict(dictionary["grid"])
    except (InvalidGrid, TypeError) as error:
        raise ParseError(f"Surface grid is not valid: {error}")
    rows = dictionary["f"]
    if not isinstance(rows, list) or len(rows) != grid.nx * grid.ny:
        raise ParseError(
            f"Surface needs {grid.nx * grid.ny} values of f, got "
            f"{len(rows) if isinstance(rows, list) else type(rows).__name__}."
        )
    values = np.full((len(rows), 4), np.nan)
    for index, value in enumerate(rows):
        if value is None:
            continue
        try:
            values[index] = [float(component) for component in value]
        except (TypeError, ValueError):
            raise ParseError(f"Value number {index} of f is not a quaternion: {value}.")
    return SurfaceGrid(grid, values.reshape(grid.shape + (4,)))


def save_surface(surface, file_name):
    """Saves a SurfaceGrid as JSON; masked nodes are written as null."""
    _write_json(surface_to_dict(surface), file_name)


def load_surface(file_name):
    """Loads a SurfaceGrid written by ``save_surface``."""
    return surface_from_dict(_read_json(file_name))


def load_dictionary(file_name):
    """Loads a JSON run configuration."""
    dictionary = _read_json(file_name)
    if not isinstance(dictionary, dict):
        raise ParseError(f"File {file_name} does not hold a dictionary.")
    return dictionary


def save_report(report, file_name):
    """Saves a report dictionary as key-sorted JSON."""
    _write_json(report, file_name)


def _save_columns(file_name, header, columns):
    _check_folder(file_name)
    np.savetxt(
        file_name,
        np.column_stack(columns),
        delimiter=",",
        header=",".join(header),
        comments="",
        fmt="%.17g",
    )


def save_phi_csv(solution, file_name):
    """Saves x, phi, phi' and phi'' of a PhiSolution as CSV."""
    _save_columns(
        file_name,
        ["x", "phi", "dphi", "ddphi"],
        [solution.xs, solution.phi, solution.dphi, solution.ddphi],
    )


def save_profile_csv(profile, file_name):
    """Saves the samples of a RevolutionProfile as CSV."""
    _save_columns(
        file_name,
        ["x", "u", "c", "du", "dc"],
        [profile.xs, profile.u, profile.c, profile.du, profile.dc],
    )


def save_phi_json(solution, file_name):
    _write_json(solution, file_name)


def save_profile_json(profile, file_name):
    _write_json(profile, file_name)


def mesh_faces(surface):
    """Quad faces of the grid as row-major vertex indices.

    A quad is skipped when any of its corners is masked.
    """
    ny, nx = surface.grid.shape
    index = np.arange(nx * ny).reshape(ny, nx)
    corners = np.stack(
        [index[:-1, :-1], index[:-1, 1:], index[1:, 1:], index[1:, :-1]], axis=-1
    )
    masked = surface.mask
    skipped = masked[:-1, :-1] | masked[:-1, 1:] | masked[1:, 1:] | masked[1:, :-1]
    return corners[~skipped]


def _write_obj(vertices, faces, file_name):
    with open(file_name, "w") as f:
        for vertex in vertices:
            f.write("v {:.17g} {:.17g} {:.17g}\n".format(*vertex))
        for face in faces:
            f.write("f {} {} {} {}\n".format(*(face + 1)))


def _write_ply(vertices, faces, file_name):
    with open(file_name, "w") as f:
        f.write("ply\nformat ascii 1.0\n")
        f.write(f"element vertex {len(vertices)}\n")
        f.write("property double x\nproperty double y\nproperty double z\n")
        f.write(f"element face {len(faces)}\n")
        f.write("property list uchar int vertex_indices\nend_header\n")
        for vertex in vertices:
            f.write("{:.17g} {:.17g} {:.17g}\n".format(*vertex))
        for face in faces:
            f.write("4 {} {} {} {}\n".format(*face))


def export_mesh(surface, file_name, mesh_format="obj", tolerance=IMAGINARY_TOLERANCE):
    """Exports a surface as a quad mesh.

    Vertices are the imaginary parts of f in row-major order. If the image
    leaves Im H by more than ``tolerance`` a 4D CSV is written next to
    ``file_name`` instead and a warning is issued.

    Parameters
    ----------
    surface : SurfaceGrid
    file_name : str
    mesh_format : str
        ``"obj"`` or ``"ply"``.
    tolerance : float
        Allowed |Re f|.

    Returns
    -------
    written : str
        Name of the file actually written.
    """
    if mesh_format not in MESH_FORMATS:
        raise ValueError(f"Mesh format {mesh_format} is not valid.")
    _check_folder(file_name)
    values = surface.values.reshape(-1, 4)
    real_part = np.nanmax(np.abs(values[:, 0])) if np.any(~surface.mask) else 0.0
    if real_part > tolerance:
        csv_name = os.path.splitext(file_name)[0] + ".csv"
        warnings.warn(
            f"Surface image has |Re f| = {real_part:.3e} > {tolerance:.1e}, "
            f"writing the 4D samples to {csv_name} instead of a mesh."
        )
        _save_columns(csv_name, ["w", "x", "y", "z"], [values[:, k] for k in range(4)])
        return csv_name
    vertices = np.nan_to_num(values[:, 1:])
    faces = mesh_faces(surface)
    if mesh_format == "obj":
        _write_obj(vertices, faces, file_name)
    else:
        _write_ply(vertices, faces, file_name)
    return file_name
