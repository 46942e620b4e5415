import warnings

import numpy as np

from ..quaternion import EuclideanMotion
from ..domains import GridSpec
from ..transforms import TRANSFORMS
from ..utils.errors import ParseError
from .basicio import MESH_FORMATS


GRID_KEYS = ("nx", "ny", "x0", "y0", "hx", "hy")


def parse_quaternion(value, name):
    """Reads a quaternion given as a real number or as [w, x, y, z].

    Parameters
    ----------
    value : float or list
        Input value.
    name : str
        Key name, used in error messages.

    Returns
    -------
    quaternion : list of float
    """
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [float(value), 0.0, 0.0, 0.0]
    try:
        components = [float(component) for component in value]
    except (TypeError, ValueError):
        raise ParseError(f"{name} of {value} is not a quaternion.")
    if len(components) != 4:
        raise ParseError(f"{name} needs 4 components, got {len(components)}.")
    return components


def parse_number(value, name):
    if isinstance(value, bool):
        raise ParseError(f"{name} of {value} is not a number.")
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ParseError(f"{name} of {value} is not a number.")


def parse_optional_quaternion(value, name):
    if value is None:
        return None
    return parse_quaternion(value, name)


def parse_range(value, name):
    try:
        start, end = (float(item) for item in value)
    except (TypeError, ValueError):
        raise ParseError(f"{name} of {value} is not a pair of numbers.")
    if not end > start:
        raise ParseError(f"{name} of {value} is empty.")
    return [start, end]


def parse_node(value, name):
    if value is None:
        return None
    try:
        i, j = (int(item) for item in value)
    except (TypeError, ValueError):
        raise ParseError(f"{name} of {value} is not a grid node (i, j).")
    return [i, j]


def check_positive(dictionary, keys, section):
    for key in keys:
        value = dictionary[key]
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
            raise ParseError(f"{section} {key} must be positive, got {value}.")


class read_grid:
    """
    Read the grid section of the dictionary.

    Attributes
    ----------
    grid_dictionary : dict
        Dictionary containing the grid information.
    grid : GridSpec or None
        The grid, None when no value was given so that commands fall back to
        their own default grid.
    """

    def __init__(self, grid_dictionary):
        self.grid_dictionary = grid_dictionary
        given = [key for key in GRID_KEYS if grid_dictionary[key] is not None]
        if len(given) == 0:
            self.grid = None
        elif len(given) < len(GRID_KEYS):
            missing = [key for key in GRID_KEYS if key not in given]
            raise ParseError(f"Grid is missing the values of {missing}.")
        else:
            check_positive(grid_dictionary, ("nx", "ny", "hx", "hy"), "grid")
            self.grid = GridSpec.from_dict(grid_dictionary)


class read_tolerances:
    """
    Read the tolerances section of the dictionary.

    Every value must be positive, except for ``margin`` which counts
    boundary rings and may be zero.
    """

    def __init__(self, tolerance_dictionary):
        self.tolerance_dictionary = tolerance_dictionary
        keys = [key for key in tolerance_dictionary if key != "margin"]
        check_positive(tolerance_dictionary, keys, "tolerance")
        margin = tolerance_dictionary["margin"]
        if isinstance(margin, bool) or not isinstance(margin, int) or margin < 0:
            raise ParseError(f"margin must be a non negative integer, got {margin}.")
        for key, value in tolerance_dictionary.items():
            setattr(self, key, value)


class read_analysis:
    """
    Read the analysis section of the dictionary.

    Attributes
    ----------
    n : float
        Constant of the cond characterization.
    h_min : float or None
        Minimal point floor; None derives it from the grid.
    """

    def __init__(self, analysis_dictionary):
        self.analysis_dictionary = analysis_dictionary
        self.n = parse_number(analysis_dictionary["n"], "n")
        self.h_min = analysis_dictionary["h_min"]
        if self.h_min is not None and not self.h_min > 0:
            raise ParseError(f"h_min must be positive, got {self.h_min}.")


class read_darboux:
    """
    Read the darboux section of the dictionary.

    Attributes
    ----------
    rho : float
        Spectral parameter.
    rhos : list of float or None
        Spectral parameters of a family run.
    lambda_inf0, lambda_l0, g0, mu0 : list of float or None
        Seeds at the base node.
    p0 : list of int or None
        Base node, the grid center when None.
    """

    def __init__(self, darboux_dictionary):
        self.darboux_dictionary = darboux_dictionary
        self.rho = parse_number(darboux_dictionary["rho"], "rho")
        rhos = darboux_dictionary["rhos"]
        if rhos is not None and not isinstance(rhos, (list, tuple)):
            raise ParseError(f"rhos of {rhos} is not a list of numbers.")
        self.rhos = None if rhos is None else [parse_number(rho, "rhos") for rho in rhos]
        self.lambda_inf0 = parse_optional_quaternion(
            darboux_dictionary["lambda_inf0"], "lambda_inf0"
        )
        self.lambda_l0 = parse_quaternion(darboux_dictionary["lambda_l0"], "lambda_l0")
        self.g0 = parse_quaternion(darboux_dictionary["g0"], "g0")
        self.mu0 = parse_quaternion(darboux_dictionary["mu0"], "mu0")
        self.p0 = parse_node(darboux_dictionary["p0"], "p0")
        if self.rho == 0.0:
            warnings.warn("rho = 0 gives the trivial transform f_hat = f + const.")


class read_painleve:
    """
    Read the painleve section of the dictionary.

    Attributes
    ----------
    x_start, phi0, dphi0, x_end : float
        Initial data phi(x_start) = phi0, phi'(x_start) = dphi0 and the end
        of the integration.
    h_ode : float
        Step size.
    blowup, degeneracy_tolerance : float
        Integration limits.
    """

    def __init__(self, painleve_dictionary):
        self.painleve_dictionary = painleve_dictionary
        for key in ("x_start", "phi0", "dphi0", "x_end"):
            value = painleve_dictionary[key]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ParseError(f"painleve {key} must be a number, got {value}.")
            setattr(self, key, float(value))
        check_positive(
            painleve_dictionary, ("h_ode", "blowup", "degeneracy_tolerance"), "painleve"
        )
        self.h_ode = float(painleve_dictionary["h_ode"])
        self.blowup = float(painleve_dictionary["blowup"])
        self.degeneracy_tolerance = float(painleve_dictionary["degeneracy_tolerance"])
        if self.x_end == self.x_start:
            raise ParseError("painleve x_end must differ from x_start.")


class read_revolution:
    """
    Read the revolution section of the dictionary.

    Attributes
    ----------
    y_range : list of float
        y interval of generated surfaces of revolution.
    ny, stride : int
        Number of y samples, and profile samples per x node.
    angle : float
        Parameter of the equivariant seed family.
    transform_y_range : list of float
        y interval of the equivariant Darboux transform grid.
    transform_ny, start_index : int
        y samples of that grid, and profile sample carrying the seeds.
    lambda0, m0 : list of float or None
        Explicit equivariant seeds.
    """

    def __init__(self, revolution_dictionary):
        self.revolution_dictionary = revolution_dictionary
        self.y_range = parse_range(revolution_dictionary["y_range"], "y_range")
        self.transform_y_range = parse_range(
            revolution_dictionary["transform_y_range"], "transform_y_range"
        )
        check_positive(revolution_dictionary, ("ny", "stride", "transform_ny"), "revolution")
        self.ny = int(revolution_dictionary["ny"])
        self.stride = int(revolution_dictionary["stride"])
        self.transform_ny = int(revolution_dictionary["transform_ny"])
        self.start_index = int(revolution_dictionary["start_index"])
        if self.start_index < 0:
            raise ParseError(f"start_index must be non negative, got {self.start_index}.")
        self.angle = parse_number(revolution_dictionary["angle"], "angle")
        self.lambda0 = parse_optional_quaternion(revolution_dictionary["lambda0"], "lambda0")
        self.m0 = parse_optional_quaternion(revolution_dictionary["m0"], "m0")
        if self.y_range[1] - self.y_range[0] > np.pi + 1e-12:
            warnings.warn("y_range longer than pi covers the surface more than once.")


class read_motion:
    """
    Read the motion section of the dictionary.

    Attributes
    ----------
    motion : EuclideanMotion
        a -> r a s^-1 + t.
    transform : str
        Transform whose equivariance is checked.
    """

    def __init__(self, motion_dictionary, tolerance):
        self.motion_dictionary = motion_dictionary
        r = parse_quaternion(motion_dictionary["r"], "r")
        s = parse_quaternion(motion_dictionary["s"], "s")
        t = parse_quaternion(motion_dictionary["t"], "t")
        self.motion = EuclideanMotion(r, s, t, tol=tolerance)
        self.transform = motion_dictionary["transform"]
        if self.transform not in TRANSFORMS:
            raise ParseError(
                f"transform of {self.transform} is not valid, use one of {TRANSFORMS}."
            )


class read_output:
    """
    Read the output section of the dictionary.

    Attributes
    ----------
    input_file : str or None
        Surface file read by the command.
    output_folder : str
        Folder receiving every file written.
    verbosity : int
        0, 1 or 2.
    mesh_format : str
        ``"obj"`` or ``"ply"``.
    """

    def __init__(self, output_dictionary):
        self.output_dictionary = output_dictionary
        self.input_file = output_dictionary["input"]
        if self.input_file is not None and not str(self.input_file):
            raise ParseError("input file name must not be empty.")
        self.output_folder = output_dictionary["output"]
        if not isinstance(self.output_folder, str) or not self.output_folder:
            raise ParseError("output folder must be a non empty string.")
        self.verbosity = output_dictionary["verbosity"]
        if self.verbosity not in (0, 1, 2):
            raise ParseError(f"verbosity of {self.verbosity} is not valid.")
        self.mesh_format = output_dictionary["mesh_format"]
        if self.mesh_format not in MESH_FORMATS:
            raise ParseError(f"mesh_format of {self.mesh_format} is not valid.")
