import math
from copy import deepcopy

import numpy as np
import pytest

from ghimc.io import Run_parameters, default_dictionary
from ghimc.domains import GridSpec, BOUNDARY_MARGIN, CLOSEDNESS_TOLERANCE
from ghimc.quaternion import UNIT_TOLERANCE
from ghimc.analysis import MINIMAL_POINT_SCALE, BRANCH_FACTOR
from ghimc.transforms import (
    PATH_TOLERANCE,
    CLASSICALITY_TOLERANCE,
    MEAN_CURVATURE_FACTOR,
    GHIMC_TOLERANCE,
    DENOMINATOR_FACTOR,
)
from ghimc.revolution.painleve import H_ODE, BLOWUP_BOUND, DEGENERACY_TOLERANCE
from ghimc.revolution.equivariant import SEED_TOLERANCE, PROPAGATION_TOLERANCE, PIII_TOLERANCE
from ghimc.revolution.profile import (
    IDENTITY_TOLERANCE,
    REVOLUTION_TOLERANCE,
    CONFORMAL_TOLERANCE,
)
from ghimc.io import IMAGINARY_TOLERANCE
from ghimc.utils.errors import ParseError, NotUnit


dictionary = {}
dictionary["command"] = "darboux"
dictionary["grid"] = {
    "nx": 61,  # nodes along x
    "ny": 61,  # nodes along y
    "x0": -1.0,
    "y0": -1.0,
    "hx": 1.0 / 30.0,
    "hy": 1.0 / 30.0,
}
dictionary["darboux"] = {
    "rho": 0.5,
    "p0": [30, 30],
}
dictionary["painleve"] = {
    "x_start": 1.0,
    "phi0": 1.2,
    "dphi0": 0.8,
    "x_end": 2.0,
}
dictionary["output"] = {
    "output": "results/cylinder/",
    "verbosity": 0,
}


def test_defaults_match_library_constants():
    tolerances = Run_parameters().tolerances
    painleve = Run_parameters().painleve

    test1 = tolerances.unit == UNIT_TOLERANCE
    test2 = tolerances.closedness == CLOSEDNESS_TOLERANCE
    test3 = tolerances.path == PATH_TOLERANCE
    test4 = tolerances.minimal_point_scale == MINIMAL_POINT_SCALE
    test5 = tolerances.margin == BOUNDARY_MARGIN
    test6 = tolerances.branch_factor == BRANCH_FACTOR
    test7 = tolerances.denominator_factor == DENOMINATOR_FACTOR
    test8 = tolerances.classicality == CLASSICALITY_TOLERANCE
    test9 = tolerances.seed == SEED_TOLERANCE
    test10 = tolerances.identity == IDENTITY_TOLERANCE
    test11 = tolerances.revolution == REVOLUTION_TOLERANCE
    test12 = tolerances.conformal == CONFORMAL_TOLERANCE
    test13 = tolerances.imaginary == IMAGINARY_TOLERANCE
    test14 = painleve.h_ode == H_ODE and painleve.blowup == BLOWUP_BOUND
    test15 = painleve.degeneracy_tolerance == DEGENERACY_TOLERANCE
    test16 = math.isclose(painleve.phi0, np.pi / 3)
    test17 = tolerances.mean_curvature == MEAN_CURVATURE_FACTOR
    test18 = tolerances.ghimc == GHIMC_TOLERANCE
    test19 = tolerances.propagation == PROPAGATION_TOLERANCE
    test20 = tolerances.piii == PIII_TOLERANCE

    print(f"Unit tolerance: {test1}")
    print(f"Closedness tolerance: {test2}")
    print(f"Path tolerance: {test3}")
    print(f"Minimal point scale: {test4}")
    print(f"Boundary margin: {test5}")
    print(f"Branch factor: {test6}")
    print(f"Denominator factor: {test7}")
    print(f"Classicality tolerance: {test8}")
    print(f"Seed tolerance: {test9}")
    print(f"Identity tolerance: {test10}")
    print(f"Revolution tolerance: {test11}")
    print(f"Conformal tolerance: {test12}")
    print(f"Imaginary tolerance: {test13}")
    print(f"ODE step and blowup bound: {test14}")
    print(f"Degeneracy tolerance: {test15}")
    print(f"phi0 = pi / 3: {test16}")
    print(f"Mean curvature factor: {test17}")
    print(f"GHIMC tolerance: {test18}")
    print(f"Propagation tolerance: {test19}")
    print(f"Painleve III tolerance: {test20}")

    assert all(
        [
            test1, test2, test3, test4, test5, test6, test7, test8,
            test9, test10, test11, test12, test13, test14, test15, test16,
            test17, test18, test19, test20,
        ]
    )


def test_partial_dictionary_is_completed():
    parameters = Run_parameters(deepcopy(dictionary))
    canonical = parameters.canonical_dictionary()

    test1 = parameters.command == "darboux"
    test2 = parameters.grid == GridSpec.from_dict(dictionary["grid"])
    test3 = parameters.darboux.rho == 0.5 and parameters.darboux.p0 == [30, 30]
    test4 = parameters.darboux.lambda_l0 == [1.0, 0.0, 0.0, 0.0]
    test5 = parameters.output.verbosity == 0 and parameters.output.mesh_format == "obj"
    test6 = list(canonical) == sorted(default_dictionary)
    test7 = Run_parameters(canonical).canonical_dictionary() == canonical
    test8 = default_dictionary["darboux"]["rho"] == 1.0

    print(f"Command: {test1}")
    print(f"Grid: {test2}")
    print(f"Darboux values: {test3}")
    print(f"Missing seeds take their defaults: {test4}")
    print(f"Output values: {test5}")
    print(f"Canonical form is key sorted and complete: {test6}")
    print(f"Canonical form is a fixed point: {test7}")
    print(f"Defaults are not modified: {test8}")

    assert all([test1, test2, test3, test4, test5, test6, test7, test8])


def test_grid_is_optional():
    parameters = Run_parameters({"command": "analyze"})

    test1 = parameters.grid is None
    test2 = parameters.darboux.p0 is None
    test3 = parameters.revolution.ny == 315

    print(f"No grid given: {test1}")
    print(f"Base node defaults to the center: {test2}")
    print(f"Revolution surfaces sample a full turn with hy = 0.01: {test3}")

    assert all([test1, test2, test3])


@pytest.mark.parametrize(
    "section, values",
    [
        ("grid", {"nx": 11}),
        ("grid", {"nx": 0, "ny": 11, "x0": 0.0, "y0": 0.0, "hx": 0.1, "hy": 0.1}),
        ("output", {"verbosity": 3}),
        ("output", {"output": ""}),
        ("output", {"mesh_format": "stl"}),
        ("motion", {"transform": "willmore"}),
        ("motion", {"r": [1.0, 0.0]}),
        ("darboux", {"rho": "abc"}),
        ("darboux", {"rhos": 3}),
        ("darboux", {"p0": "center"}),
        ("painleve", {"x_end": 1.0}),
        ("painleve", {"phi0": "pi"}),
        ("painleve", {"h_ode": -1e-3}),
        ("tolerances", {"closedness": -1.0}),
        ("tolerances", {"margin": True}),
        ("revolution", {"y_range": [1.0, 1.0]}),
        ("revolution", {"start_index": -1}),
        ("analysis", {"n": True}),
        ("analysis", {"h_min": 0.0}),
    ],
)
def test_invalid_values(section, values):
    with pytest.raises(ParseError):
        Run_parameters({section: values})


def test_invalid_dictionaries():
    with pytest.raises(ParseError):
        Run_parameters([("command", "analyze")])
    with pytest.raises(ParseError):
        Run_parameters({"darboux": 1.0})


def test_motion_factors_must_be_unit():
    with pytest.raises(NotUnit) as error:
        Run_parameters({"motion": {"r": [2.0, 0.0, 0.0, 0.0]}})

    test1 = math.isclose(error.value.residual, 1.0)
    test2 = error.value.exit_code == 2

    print(f"Defect recorded: {test1}")
    print(f"Input error: {test2}")

    assert all([test1, test2])


def test_real_motion_values():
    parameters = Run_parameters({"motion": {"s": -1.0, "t": 2.0, "transform": "backward"}})
    motion = parameters.motion.motion

    test1 = np.allclose(motion.s, [-1.0, 0.0, 0.0, 0.0])
    test2 = np.allclose(motion([0.0, 1.0, 0.0, 0.0]), [2.0, -1.0, 0.0, 0.0])
    test3 = parameters.motion.transform == "backward"

    print(f"Real numbers are read as quaternions: {test1}")
    print(f"a -> r a s^-1 + t: {test2}")
    print(f"Transform: {test3}")

    assert all([test1, test2, test3])


def test_warnings():
    with pytest.warns(UserWarning, match="not used"):
        Run_parameters({"velocity_model": "marmousi"})
    with pytest.warns(UserWarning, match="trivial"):
        Run_parameters({"darboux": {"rho": 0.0}})
    with pytest.warns(UserWarning, match="more than once"):
        Run_parameters({"revolution": {"y_range": [0.0, 4.0]}})


def test_minimal_point_floor():
    grid = GridSpec.from_bounds(x_range=(0.0, 3.0), y_range=(0.0, 4.0), nx=11, ny=11)
    derived = Run_parameters().h_min(grid)
    given = Run_parameters({"analysis": {"h_min": 0.25}}).h_min(grid)

    test1 = math.isclose(derived, MINIMAL_POINT_SCALE / 5.0)
    test2 = given == 0.25

    print(f"Floor derived from the grid diameter: {test1}")
    print(f"Floor given in the configuration: {test2}")

    assert all([test1, test2])


if __name__ == "__main__":
    test_defaults_match_library_constants()
    test_partial_dictionary_is_completed()
    test_invalid_values("darboux", {"rho": "abc"})
    test_motion_factors_must_be_unit()
    test_warnings()
    test_minimal_point_floor()
