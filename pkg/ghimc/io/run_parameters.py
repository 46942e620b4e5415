import copy
import warnings

from ..analysis import minimal_point_floor
from ..utils.utils import recursive_dictionary_substitution
from ..utils.errors import ParseError
from . import dictionaryio


default_dictionary = {}
# Command run by the command line front end
default_dictionary["command"] = None
# Grid of generated example surfaces. Leaving every value as None uses the
# default grid of the chosen example.
default_dictionary["grid"] = {
    "nx": None,  # number of nodes along x, at least 5
    "ny": None,  # number of nodes along y, at least 5
    "x0": None,  # x of node (0, 0)
    "y0": None,  # y of node (0, 0)
    "hx": None,  # spacing along x
    "hy": None,  # spacing along y
}
default_dictionary["tolerances"] = {
    "unit": 1e-9,  # unit and unit imaginary checks, motion factors
    "closedness": 1e-2,  # largest |d omega| accepted when integrating a potential
    "path": 1e-2,  # relative disagreement of the two Darboux sweeps
    "minimal_point_scale": 1e-6,  # H_min = scale / grid diameter
    "margin": 4,  # boundary rings left out of residual max-norms
    "branch_factor": 1e-9,  # |f_x| below factor * max |f_x| is a branch point
    "denominator_factor": 1e-9,  # relative floor of inverted denominators
    "classicality": 5e-3,  # largest R_hat + T^-1 N T of a classical transform
    "mean_curvature": 5e-2,  # largest H_hat - H of a classical transform, relative to max |H|
    "ghimc": 1e-2,  # GHIMC residual of a Darboux transform
    "seed": 1e-8,  # largest violation of the equivariant seed constraints
    "propagation": 1e-6,  # seed constraint violation carried along x
    "piii": 1e-3,  # Painleve III residual of a transformed phi
    "identity": 1e-6,  # u' = 4 cos phi and c' = 2 e^{u/2} sin phi
    "revolution": 1e-6,  # deviation from rotational symmetry
    "conformal": 1e-3,  # sin^2 phi + cos^2 phi = 1 on extracted profiles
    "certificate": 5e-3,  # certificates deciding the exit code
    "imaginary": 1e-8,  # |Re f| allowed for 3D mesh export
}
default_dictionary["analysis"] = {
    "n": 0.0,  # constant of the cond characterization
    "h_min": None,  # minimal point floor, None derives it from the grid
}
default_dictionary["darboux"] = {
    "rho": 1.0,  # spectral parameter
    "rhos": None,  # list of spectral parameters for a family run
    "lambda_inf0": None,  # lambda_inf at p0, None uses -f(p0)
    "lambda_l0": [1.0, 0.0, 0.0, 0.0],  # lambda_L at p0
    "g0": [0.0, 0.0, 0.0, 0.0],  # Christoffel dual at p0
    "mu0": [0.0, 0.0, 0.0, 0.0],  # backward Baecklund potential at p0
    "p0": None,  # base node [i, j], None uses the grid center
}
default_dictionary["painleve"] = {
    "x_start": 1.0,  # initial point, must be positive
    "phi0": 1.0471975511965976,  # phi(x_start), here pi / 3
    "dphi0": 0.58,  # phi'(x_start)
    "x_end": 3.0,  # end of the integration
    "h_ode": 1e-3,  # RK4 step size
    "blowup": 1e8,  # |phi| + |phi'| bound before giving up
    "degeneracy_tolerance": 1e-8,  # |phi' + 2 sin phi| flagged as degenerate
}
default_dictionary["revolution"] = {
    "y_range": [0.0, 3.141592653589793],  # pi is a full turn
    "ny": 315,  # y samples of generated surfaces, hy = 0.01 over a full turn
    "stride": 10,  # profile samples per x node of generated surfaces
    "angle": 0.0,  # parameter of the equivariant seed family
    "transform_y_range": [0.0, 0.1],  # y interval of the transform grid
    "transform_ny": 11,  # y samples of the transform grid
    "start_index": 0,  # profile sample carrying the equivariant seeds
    "lambda0": None,  # explicit Lambda seed, None uses the seed family
    "m0": None,  # explicit M seed, None uses 1
}
default_dictionary["motion"] = {
    "r": [1.0, 0.0, 0.0, 0.0],  # left unit factor
    "s": [1.0, 0.0, 0.0, 0.0],  # right unit factor
    "t": [0.0, 0.0, 0.0, 0.0],  # translation
    "transform": "ghimc",  # ghimc, backward or darboux
}
default_dictionary["output"] = {
    "input": None,  # surface file read by the command
    "output": "results/",  # folder receiving the outputs
    "verbosity": 1,  # 0 silent, 1 stages, 2 stages and residuals
    "mesh_format": "obj",  # obj or ply
}


def canonical_form(item):
    """Key-sorted copy with tuples turned into lists."""
    if isinstance(item, dict):
        return {key: canonical_form(item[key]) for key in sorted(item)}
    if isinstance(item, (list, tuple)):
        return [canonical_form(value) for value in item]
    return copy.deepcopy(item)


class Run_parameters:
    """
    Class that reads and sanitizes the run configuration.

    Attributes
    ----------
    input_dictionary : dict
        The configuration with every missing key filled in from
        ``default_dictionary``.
    command : str or None
        Command to run.
    grid : GridSpec or None
        Grid of generated surfaces.
    tolerances : read_tolerances
        Every numeric tolerance, as attributes.
    analysis, darboux, painleve, revolution, motion, output : object
        The parsed sections, see ``ghimc.io.dictionaryio``.

    Methods
    -------
    canonical_dictionary()
        Fully populated, key-sorted configuration.
    h_min(grid)
        Minimal point floor used on ``grid``.
    """

    def __init__(self, dictionary=None):
        """Initializes the class from a, possibly partial, dictionary.

        Parameters
        ----------
        dictionary : dict, optional
            Configuration; missing sections and keys take their defaults.

        Raises
        ------
        ParseError
            If a value is not valid.
        """
        if dictionary is None:
            dictionary = {}
        if not isinstance(dictionary, dict):
            raise ParseError("The run configuration must be a dictionary.")
        dictionary = copy.deepcopy(dictionary)
        for key in dictionary:
            if key not in default_dictionary:
                warnings.warn(f"Configuration key {key} is not used.")
        for key, value in default_dictionary.items():
            if isinstance(value, dict) and key in dictionary:
                if not isinstance(dictionary[key], dict):
                    raise ParseError(f"Configuration section {key} must be a dictionary.")
        recursive_dictionary_substitution(dictionary, default_dictionary)
        self.input_dictionary = dictionary

        self.command = dictionary["command"]
        self.grid = dictionaryio.read_grid(dictionary["grid"]).grid
        self.tolerances = dictionaryio.read_tolerances(dictionary["tolerances"])
        self.analysis = dictionaryio.read_analysis(dictionary["analysis"])
        self.darboux = dictionaryio.read_darboux(dictionary["darboux"])
        self.painleve = dictionaryio.read_painleve(dictionary["painleve"])
        self.revolution = dictionaryio.read_revolution(dictionary["revolution"])
        self.motion = dictionaryio.read_motion(dictionary["motion"], self.tolerances.unit)
        self.output = dictionaryio.read_output(dictionary["output"])

    def canonical_dictionary(self):
        return canonical_form(self.input_dictionary)

    def h_min(self, grid):
        if self.analysis.h_min is not None:
            return self.analysis.h_min
        return minimal_point_floor(grid, self.tolerances.minimal_point_scale)
