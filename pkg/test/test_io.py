import json
import os

import numpy as np
import pytest

from ghimc import io
from ghimc.domains import GridSpec
from ghimc.analysis import SurfaceGrid
from ghimc.examples import cylinder, plane
from ghimc.revolution import piii_integrate, profile_from_phi
from ghimc.utils.errors import ParseError


def small_grid(nx=5, ny=4):
    return GridSpec.from_bounds(x_range=(0.0, 1.0), y_range=(0.0, 0.6), nx=nx, ny=ny)


def test_surface_json_round_trip(tmp_path):
    values = cylinder(small_grid()).values.copy()
    values[2, 3] = np.nan
    surface = SurfaceGrid(small_grid(), values)
    file_name = str(tmp_path / "surfaces" / "cylinder.json")

    io.save_surface(surface, file_name)
    loaded = io.load_surface(file_name)
    with open(file_name, "r") as f:
        stored = json.load(f)

    test1 = loaded.grid == surface.grid
    test2 = np.array_equal(loaded.values, surface.values, equal_nan=True)
    test3 = loaded.mask[2, 3] and loaded.mask.sum() == 1
    test4 = stored["f"][2 * 5 + 3] is None

    print(f"Grid is kept: {test1}")
    print(f"Values are kept exactly: {test2}")
    print(f"Masked node is kept: {test3}")
    print(f"Masked nodes are written as null: {test4}")

    assert all([test1, test2, test3, test4])


def test_corrupt_surface_files(tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"grid": small_grid().to_dict(), "f": [[0, 0, 0, 0]]}))
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"grid": small_grid().to_dict(), "f": ["abc"] * 20}))
    no_grid = tmp_path / "no_grid.json"
    no_grid.write_text(json.dumps({"f": []}))

    for file_name in (broken, short, wrong, no_grid, tmp_path / "missing.json"):
        with pytest.raises(ParseError):
            io.load_surface(str(file_name))


def test_report_is_deterministic(tmp_path):
    report = {"b": np.float64(1.5), "a": [np.nan, np.int64(2)], "c": {"z": True, "y": np.inf}}
    first = str(tmp_path / "first.json")
    second = str(tmp_path / "second.json")
    io.save_report(report, first)
    io.save_report(dict(reversed(list(report.items()))), second)
    with open(first, "rb") as f:
        first_bytes = f.read()
    with open(second, "rb") as f:
        second_bytes = f.read()

    test1 = first_bytes == second_bytes
    test2 = json.loads(first_bytes) == {"a": [None, 2], "b": 1.5, "c": {"y": None, "z": True}}

    print(f"Byte identical reports: {test1}")
    print(f"Non finite values become null: {test2}")

    assert all([test1, test2])


def test_profile_csv(tmp_path):
    solution = piii_integrate(1.0, np.pi / 3, 0.58, 1.1)
    profile = profile_from_phi(solution)
    phi_file = str(tmp_path / "phi.csv")
    profile_file = str(tmp_path / "profile.csv")
    io.save_phi_csv(solution, phi_file)
    io.save_profile_csv(profile, profile_file)

    with open(phi_file, "r") as f:
        header = f.readline().strip()
    phi_columns = np.loadtxt(phi_file, delimiter=",", skiprows=1)
    profile_columns = np.loadtxt(profile_file, delimiter=",", skiprows=1)

    test1 = header == "x,phi,dphi,ddphi"
    test2 = np.array_equal(phi_columns[:, 1], solution.phi)
    test3 = profile_columns.shape == (solution.xs.size, 5)
    test4 = np.array_equal(profile_columns[:, 2], profile.c)

    print(f"Header: {test1}")
    print(f"phi is written at full precision: {test2}")
    print(f"Profile columns: {test3}")
    print(f"c column: {test4}")

    assert all([test1, test2, test3, test4])


@pytest.mark.parametrize("mesh_format", ["obj", "ply"])
def test_export_mesh(tmp_path, mesh_format):
    surface = cylinder(small_grid())
    file_name = str(tmp_path / f"cylinder.{mesh_format}")
    written = io.export_mesh(surface, file_name, mesh_format=mesh_format)
    with open(written, "r") as f:
        lines = f.read().splitlines()

    if mesh_format == "obj":
        vertex_count = sum(line.startswith("v ") for line in lines)
        face_count = sum(line.startswith("f ") for line in lines)
        first_face = [line for line in lines if line.startswith("f ")][0]
        test3 = first_face == "f 1 2 7 6"
    else:
        vertex_count = int(lines[2].split()[-1])
        face_count = int(lines[6].split()[-1])
        test3 = lines[-12] == "4 0 1 6 5"

    test1 = written == file_name
    test2 = vertex_count == 20 and face_count == 12

    print(f"Mesh written: {test1}")
    print(f"20 vertices and 12 quads: {test2}")
    print(f"Row-major quads: {test3}")

    assert all([test1, test2, test3])


def test_masked_quads_are_skipped():
    values = cylinder(small_grid()).values.copy()
    values[1, 2] = np.nan
    faces = io.mesh_faces(SurfaceGrid(small_grid(), values))

    test1 = len(faces) == 12 - 4
    test2 = not np.any(faces == 1 * 5 + 2)

    print(f"The four quads around the node are skipped: {test1}")
    print(f"The masked vertex is not used: {test2}")

    assert all([test1, test2])


def test_four_dimensional_export(tmp_path):
    surface = plane(small_grid(), kind="complex")
    file_name = str(tmp_path / "plane.obj")
    with pytest.warns(UserWarning):
        written = io.export_mesh(surface, file_name)
    samples = np.loadtxt(written, delimiter=",", skiprows=1)

    test1 = written == str(tmp_path / "plane.csv")
    test2 = not os.path.exists(file_name)
    test3 = samples.shape == (20, 4)

    print(f"CSV written instead: {test1}")
    print(f"No mesh written: {test2}")
    print(f"4D samples: {test3}")

    assert all([test1, test2, test3])

    with pytest.raises(ValueError):
        io.export_mesh(cylinder(small_grid()), str(tmp_path / "cylinder.stl"), mesh_format="stl")


if __name__ == "__main__":
    import pathlib
    import tempfile

    with tempfile.TemporaryDirectory() as folder:
        test_surface_json_round_trip(pathlib.Path(folder))
        test_report_is_deterministic(pathlib.Path(folder))
        test_export_mesh(pathlib.Path(folder), "obj")
