import numpy as np
import pytest

import ghimc
from ghimc.quaternion import ONE, K, norm, unit_imaginary_defect
from ghimc.domains import GridSpec, form_report
from ghimc.analysis import (
    SurfaceGrid,
    normals,
    mean_curvature,
    hopf_w,
    cond_characterization,
    conformality_residual,
    real_valued_h,
    eta_residual,
    ghimc_residual,
    willmore_diagnostics,
    inverse_mean_curvature_fit,
    analyze_surface,
)
from ghimc.examples import plane, cylinder, sphere_chart, example_surface, EXAMPLES
from ghimc.utils.errors import MinimalPoint


def square_grid(n=101, half_width=1.0):
    return GridSpec.from_bounds(
        x_range=(-half_width, half_width), y_range=(-half_width, half_width), nx=n, ny=n
    )


def interior_values(field, margin=4):
    return field.values[field.grid.interior(margin)]


def test_cylinder_mean_curvature():
    surface = cylinder(square_grid())
    sphere = mean_curvature(surface)
    H = interior_values(sphere.H)

    test1 = np.max(np.abs(norm(H) - 0.5)) < 1e-3
    test2 = np.max(np.abs(H[:, 0] + 0.5)) < 1e-3
    test3 = real_valued_h(sphere)
    test4 = np.max(unit_imaginary_defect(interior_values(sphere.N))) < 1e-3

    print(f"|H| = 1/2: {test1}")
    print(f"H = -1/2: {test2}")
    print(f"H is real: {test3}")
    print(f"N is unit imaginary: {test4}")

    assert all([test1, test2, test3, test4])


def test_sphere_chart_mean_curvature():
    grid = square_grid(201, half_width=0.5)
    surface = sphere_chart(grid)
    sphere = mean_curvature(surface)
    center = grid.center_node()

    test1 = abs(norm(sphere.H.at(*center)) - 1.0) < 1e-3
    test2 = np.max(np.abs(norm(interior_values(sphere.H)) - 1.0)) < 1e-2
    test3 = np.allclose(sphere.N.at(*center), -surface.at(*center), atol=1e-3)
    test4 = np.allclose(sphere.R.at(*center), -surface.at(*center), atol=1e-3)

    print(f"|H| = 1 at the center: {test1}")
    print(f"|H| = 1 on the interior: {test2}")
    print(f"N = -f: {test3}")
    print(f"R = -f: {test4}")

    assert all([test1, test2, test3, test4])


def test_mean_curvature_convergence_order():
    errors = []
    for n in (51, 101):
        grid = square_grid(n, half_width=0.5)
        H = mean_curvature(sphere_chart(grid)).H.values
        x, y = grid.coordinates()
        inner = (np.abs(x) <= 0.3 + 1e-12) & (np.abs(y) <= 0.3 + 1e-12)
        distance = np.minimum(norm(H - ONE), norm(H + ONE))
        errors.append(np.max(distance[inner]))
    order = np.log2(errors[0] / errors[1])

    test1 = 1.5 <= order <= 2.5

    print(f"Convergence order {order} of H on the sphere chart: {test1}")

    assert test1


def test_conformality_residual():
    grid = square_grid(41)
    x, y = grid.coordinates()
    stretched = np.zeros(grid.shape + (4,))
    stretched[..., 1] = x
    stretched[..., 2] = 2.0 * y

    flat = conformality_residual(plane(grid))
    skewed = conformality_residual(SurfaceGrid(grid, stretched))

    test1 = flat.max < 1e-12
    test2 = np.isclose(skewed.max, 3.0)
    test3 = np.isclose(skewed.components["metric"].max, 3.0)

    print(f"The plane is conformal: {test1}")
    print(f"x i + 2y j is detected: {test2}")
    print(f"The metric defect is |f_y|^2 - |f_x|^2 = 3: {test3}")

    assert all([test1, test2, test3])


def test_normals_of_the_plane():
    surface = plane(square_grid(21))
    N, R, branch_mask = normals(surface)

    test1 = np.allclose(N.values, K)
    test2 = np.allclose(R.values, K)
    test3 = not np.any(branch_mask)

    print(f"N = j i^-1 = k: {test1}")
    print(f"R = -i^-1 j = k: {test2}")
    print(f"No branch points: {test3}")

    assert all([test1, test2, test3])


def test_plane_is_minimal():
    surface = plane(square_grid(41))
    sphere = mean_curvature(surface)

    test1 = np.max(norm(sphere.H.values)) < 1e-12

    print(f"H vanishes on the plane: {test1}")

    assert test1

    with pytest.raises(MinimalPoint):
        ghimc_residual(surface, sphere)


def test_ghimc_residual_of_constant_mean_curvature():
    surface = cylinder(square_grid())
    sphere = mean_curvature(surface)
    report = ghimc_residual(surface, sphere)
    fit = inverse_mean_curvature_fit(sphere)

    test1 = report.max < 1e-6
    test2 = abs(fit["slope"]) < 1e-6
    test3 = abs(fit["intercept"] + 2.0) < 1e-2
    test4 = fit["max_imaginary"] < 1e-6

    print(f"d*d(H^-1) vanishes on the cylinder: {test1}")
    print(f"1/H does not depend on x: {test2}")
    print(f"1/H = -2: {test3}")
    print(f"1/H is real: {test4}")

    assert all([test1, test2, test3, test4])


def test_sphere_chart_hopf_data():
    surface = sphere_chart(square_grid(101, half_width=0.5))
    sphere = mean_curvature(surface)
    eta = eta_residual(surface, sphere)
    willmore = willmore_diagnostics(surface, sphere)
    round_cylinder = cylinder(square_grid())
    cylinder_eta = eta_residual(round_cylinder, mean_curvature(round_cylinder))

    test1 = eta.max < 1e-2 and cylinder_eta.max < 1e-3
    test2 = abs(willmore.energy) < 1e-3
    test3 = np.isfinite(willmore.dw_residual.max)

    print(f"eta residual is O(h^2): {test1}")
    print(f"Willmore energy of the round sphere vanishes: {test2}")
    print(f"Willmore residual is finite: {test3}")

    assert all([test1, test2, test3])


def test_cond_characterization():
    surface = cylinder(square_grid())
    sphere = mean_curvature(surface)
    reports = cond_characterization(surface, sphere)
    round_sphere = sphere_chart(square_grid(101, half_width=0.5))
    w = hopf_w(round_sphere, mean_curvature(round_sphere))

    test1 = reports["identity"].max < 5e-3
    test2 = reports["closedness"].max < 1e-2
    test3 = form_report("w", w).max < 1e-2

    print(f"Identity holds on a conformal map: {test1}")
    print(f"The combination is closed on a GHIMC surface: {test2}")
    print(f"w vanishes on the round sphere: {test3}")

    assert all([test1, test2, test3])


def test_analyze_surface_report():
    cylinder_report = analyze_surface(cylinder(square_grid(61)))
    plane_report = analyze_surface(plane(square_grid(41)))
    keys = {
        "grid",
        "conformality",
        "sphere_consistency",
        "real_valued_h",
        "branch_fraction",
        "eta",
        "willmore",
        "ghimc",
        "cond",
        "hopf_q",
        "inverse_mean_curvature_fit",
    }

    test1 = set(cylinder_report) == keys
    test2 = cylinder_report["ghimc"]["max"] < 1e-6
    test3 = plane_report["ghimc"]["error"] == "MinimalPoint"
    test4 = plane_report["cond"]["n"] == [0.0, 0.0, 0.0, 0.0]

    print(f"Report keys: {test1}")
    print(f"Cylinder passes: {test2}")
    print(f"Plane records the minimal point error: {test3}")
    print(f"Cond constant recorded: {test4}")

    assert all([test1, test2, test3, test4])


def test_example_surfaces():
    surfaces = {name: example_surface(name) for name in EXAMPLES}

    test1 = all(isinstance(surface, SurfaceGrid) for surface in surfaces.values())
    test2 = all(np.all(np.isfinite(surface.values)) for surface in surfaces.values())
    test3 = ghimc.example_surface("cylinder").grid.nx == 101

    print(f"Every example builds a SurfaceGrid: {test1}")
    print(f"Examples are finite: {test2}")
    print(f"Default grids are used: {test3}")

    assert all([test1, test2, test3])

    with pytest.raises(ValueError):
        example_surface("torus")


if __name__ == "__main__":
    test_cylinder_mean_curvature()
    test_sphere_chart_mean_curvature()
    test_conformality_residual()
    test_ghimc_residual_of_constant_mean_curvature()
    test_sphere_chart_hopf_data()
    test_analyze_surface_report()
    test_example_surfaces()
