from . import utils
from . import quaternion
from . import domains
from . import solvers
from . import analysis
from . import transforms
from . import revolution
from . import examples
from . import io
from .quaternion import EuclideanMotion
from .domains import GridSpec, ScalarField, OneForm, TwoForm
from .analysis import SurfaceGrid, mean_curvature, analyze_surface
from .examples import example_surface

__all__ = [
    "utils",
    "quaternion",
    "domains",
    "solvers",
    "analysis",
    "transforms",
    "revolution",
    "examples",
    "io",
    "EuclideanMotion",
    "GridSpec",
    "ScalarField",
    "OneForm",
    "TwoForm",
    "SurfaceGrid",
    "mean_curvature",
    "analyze_surface",
    "example_surface",
]
