import numpy as np
import pytest

from ghimc.quaternion import ONE, I, J, K, norm
from ghimc.domains import (
    GridSpec,
    ScalarField,
    OneForm,
    differential,
    hodge_star,
    wedge,
    decompose_left,
    decompose_right,
    closedness_residual,
    integrate_potential,
    path_disagreement,
    residual_report,
    combined_report,
)
from ghimc.utils.errors import InvalidGrid, GridMismatch, NotClosed, NotComplexStructure


def square_grid(n=101, half_width=1.0):
    return GridSpec.from_bounds(
        x_range=(-half_width, half_width), y_range=(-half_width, half_width), nx=n, ny=n
    )


def smooth_field(grid):
    x, y = grid.coordinates()
    values = np.stack(
        [np.sin(x) * np.cos(y), x * y, np.exp(0.5 * x) - y ** 2, np.cos(x + y)],
        axis=-1,
    )
    return ScalarField(grid, values)


def random_form(grid, seed):
    rng = np.random.default_rng(seed)
    return OneForm(grid, rng.normal(size=grid.shape + (4,)), rng.normal(size=grid.shape + (4,)))


def test_grid_spec():
    grid = GridSpec.from_bounds(x_range=(0.0, 2.0), y_range=(-1.0, 1.0), nx=21, ny=11)
    x, y = grid.coordinates()

    test1 = grid.shape == (11, 21)
    test2 = np.isclose(grid.hx, 0.1) and np.isclose(grid.hy, 0.2)
    test3 = np.isclose(x[3, 5], 0.5) and np.isclose(y[3, 5], -0.4)
    test4 = GridSpec.from_dict(grid.to_dict()) == grid
    test5 = grid.interior(4).sum() == (11 - 8) * (21 - 8)
    test6 = grid.center_node() == (10, 5)

    print(f"Shape is (ny, nx): {test1}")
    print(f"Spacings: {test2}")
    print(f"Coordinates are indexed [j, i]: {test3}")
    print(f"Dictionary round trip: {test4}")
    print(f"Interior mask: {test5}")
    print(f"Center node: {test6}")

    assert all([test1, test2, test3, test4, test5, test6])


def test_grid_errors():
    with pytest.raises(InvalidGrid):
        GridSpec(nx=3, ny=10, x0=0.0, y0=0.0, hx=0.1, hy=0.1)
    with pytest.raises(InvalidGrid):
        GridSpec(nx=10, ny=10, x0=0.0, y0=0.0, hx=-0.1, hy=0.1)
    with pytest.raises(InvalidGrid):
        GridSpec.from_dict({"nx": 10, "ny": 10})
    with pytest.raises(GridMismatch):
        square_grid(11).check_same(square_grid(13))
    with pytest.raises(GridMismatch):
        ScalarField(square_grid(11), np.zeros((5, 5, 4)))


def test_scalar_field_mask():
    grid = square_grid(11)
    values = np.ones(grid.shape + (4,))
    values[2, 3] = np.nan
    field = ScalarField(grid, values)
    real_field = ScalarField(grid, np.full(grid.shape, 2.0))

    test1 = field.mask[2, 3] and field.mask.sum() == 1
    test2 = np.all(np.isnan(field.at(3, 2)))
    test3 = np.isclose(field.masked_fraction, 1.0 / 121.0)
    test4 = np.allclose(real_field.at(0, 0), 2.0 * ONE)

    print(f"Non finite nodes are masked: {test1}")
    print(f"Masked values are NaN: {test2}")
    print(f"Masked fraction: {test3}")
    print(f"Real arrays become real quaternions: {test4}")

    assert all([test1, test2, test3, test4])


def test_differential_of_quadratics_is_exact():
    grid = square_grid(21)
    x, y = grid.coordinates()
    f = ScalarField(grid, x ** 2 * y)
    df = differential(f)

    test1 = np.allclose(df.cx[..., 0], 2.0 * x * y, atol=1e-12)
    test2 = np.allclose(df.cy[..., 0], x ** 2, atol=1e-12)

    print(f"f_x is exact: {test1}")
    print(f"f_y is exact: {test2}")

    assert all([test1, test2])


def test_exact_forms_are_closed():
    grid = square_grid(61)
    df = differential(smooth_field(grid))

    residual = closedness_residual(df, margin=0)
    test1 = residual < 1e-9

    print(f"d(df) vanishes to round-off: {test1}")

    assert test1


def test_hodge_star_and_wedge():
    grid = square_grid(11)
    omega = random_form(grid, 1)
    eta = random_form(grid, 2)
    star_star = hodge_star(hodge_star(omega))
    dxdy = wedge(
        OneForm(grid, np.ones(grid.shape + (4,)), np.zeros(grid.shape + (4,))),
        OneForm(grid, np.zeros(grid.shape + (4,)), np.ones(grid.shape + (4,)) * ONE),
    )

    test1 = np.allclose(star_star.cx, -omega.cx) and np.allclose(star_star.cy, -omega.cy)
    # conj(omega ^ eta) = -conj(eta) ^ conj(omega)
    test2 = np.allclose(
        wedge(omega, eta).density * np.array([1.0, -1.0, -1.0, -1.0]),
        -wedge(eta.conj(), omega.conj()).density,
    )
    test3 = np.allclose(dxdy.density[..., 0], 1.0)

    print(f"** = -1: {test1}")
    print(f"Conjugate of a wedge: {test2}")
    print(f"dx ^ dy = 1: {test3}")

    assert all([test1, test2, test3])


def test_type_decomposition_identities():
    grid = square_grid(11)
    N = ScalarField(grid, np.broadcast_to((I + J) / np.sqrt(2.0), grid.shape + (4,)))
    omega = random_form(grid, 3)
    eta = random_form(grid, 4)

    omega_n, omega_minus_n = decompose_left(omega, N)
    right_n, _ = decompose_right(omega, N)
    left_eta, _ = decompose_left(eta, N)
    conj_right, conj_right_minus = decompose_right(omega.conj(), N)
    star_n = hodge_star(omega_n)
    star_minus_n = hodge_star(omega_minus_n)
    star_right = hodge_star(right_n)
    n_omega = omega_n.lmul(N)
    minus_n_omega = omega_minus_n.lmul(N)
    right_omega = right_n.rmul(N)

    tests = [
        np.allclose(star_n.cx, n_omega.cx, atol=1e-12) and np.allclose(star_n.cy, n_omega.cy, atol=1e-12),
        np.allclose(star_minus_n.cx, -minus_n_omega.cx, atol=1e-12),
        np.allclose(star_right.cy, right_omega.cy, atol=1e-12),
        np.allclose((omega_n + omega_minus_n).cx, omega.cx, atol=1e-12),
        np.max(norm(wedge(right_n, left_eta).density)) < 1e-12,
        np.allclose(omega_n.conj().cx, conj_right_minus.cx, atol=1e-12)
        and np.allclose(omega_n.conj().cy, conj_right_minus.cy, atol=1e-12),
        conj_right.cx.shape == omega.cx.shape,
    ]
    names = [
        "*omega_N = N omega_N",
        "*omega_-N = -N omega_-N",
        "*omega^N = omega^N N",
        "parts add up",
        "omega^N ^ eta_N = 0",
        "conj(omega_N) = conj(omega)^-N",
        "shapes",
    ]
    for name, test in zip(names, tests):
        print(f"{name}: {test}")

    assert all(tests)


def test_decomposition_needs_complex_structure():
    grid = square_grid(11)
    omega = random_form(grid, 5)
    with pytest.raises(NotComplexStructure):
        decompose_left(omega, ScalarField(grid, np.broadcast_to(ONE, grid.shape + (4,))))
    with pytest.raises(NotComplexStructure):
        decompose_right(omega, ScalarField(grid, np.broadcast_to(2.0 * K, grid.shape + (4,))))


@pytest.mark.parametrize("order", ["rows", "columns"])
def test_integrate_potential(order):
    grid = square_grid(101)
    f = smooth_field(grid)
    p0 = (30, 60)
    F = integrate_potential(differential(f), p0=p0, v0=f.at(*p0), order=order)

    error = np.max(norm(F.values - f.values))
    test1 = error < 2e-3
    test2 = np.allclose(F.at(*p0), f.at(*p0))

    print(f"Potential recovers f up to O(h^2): {test1}")
    print(f"Potential takes v0 at p0: {test2}")

    assert all([test1, test2])


def test_path_disagreement_of_exact_form():
    grid = square_grid(101)
    report = path_disagreement(differential(smooth_field(grid)), p0=grid.center_node())

    test1 = report.max < 2e-3

    print(f"Row and column potentials agree: {test1}")

    assert test1


def test_integrate_rejects_rotation_form():
    grid = square_grid(41)
    x, y = grid.coordinates()
    # d(-y dx + x dy) = 2 dx ^ dy
    omega = OneForm(grid, -y[..., np.newaxis] * ONE, x[..., np.newaxis] * ONE)
    with pytest.raises(NotClosed) as error:
        integrate_potential(omega)

    test1 = np.isclose(error.value.residual, 2.0)
    test2 = error.value.exit_code == 3

    print(f"Residual recorded: {test1}")
    print(f"Certificate error: {test2}")

    assert all([test1, test2])


def test_derivative_convergence_order():
    errors = []
    for n in (41, 81, 161):
        grid = square_grid(n)
        x, y = grid.coordinates()
        df = differential(smooth_field(grid))
        exact = np.cos(x) * np.cos(y)
        pointwise = np.abs(df.cx[..., 0] - exact)
        errors.append(residual_report("f_x", pointwise, grid, margin=0).max)
    orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))

    test1 = np.all(orders > 1.5) and np.all(orders < 2.5)

    print(f"Errors {errors}, orders {orders}")
    print(f"Second order convergence: {test1}")

    assert test1


def test_residual_report():
    grid = square_grid(21)
    pointwise = np.zeros(grid.shape)
    pointwise[0, 0] = 10.0
    pointwise[12, 10] = 3.0
    pointwise[8, 9] = np.nan
    report = residual_report("spike", pointwise, grid, margin=4)
    other = residual_report("zero", np.zeros(grid.shape), grid, margin=4)
    combined = combined_report("both", [report, other])

    test1 = report.max == 3.0
    test2 = np.allclose(report.worst_node, grid.node(10, 12))
    test3 = np.isclose(report.masked_fraction, 1.0 / 169.0)
    test4 = report.passes(3.0) and not report.passes(2.9)
    test5 = combined.max == 3.0 and set(combined.components) == {"spike", "zero"}
    test6 = report.to_dict()["worst_node"] == list(grid.node(10, 12))

    print(f"Boundary rings are left out: {test1}")
    print(f"Worst node: {test2}")
    print(f"NaN nodes count as masked: {test3}")
    print(f"Tolerance check: {test4}")
    print(f"Combined report: {test5}")
    print(f"Dictionary form: {test6}")

    assert all([test1, test2, test3, test4, test5, test6])


if __name__ == "__main__":
    test_grid_spec()
    test_scalar_field_mask()
    test_differential_of_quadratics_is_exact()
    test_exact_forms_are_closed()
    test_hodge_star_and_wedge()
    test_type_decomposition_identities()
    test_integrate_potential("rows")
    test_path_disagreement_of_exact_form()
    test_derivative_convergence_order()
    test_residual_report()
