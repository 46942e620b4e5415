from . import errors
from .utils import (
    set_verbosity,
    display,
    display_residual,
    display_progress,
    recursive_dictionary_substitution,
)


__all__ = [
    "errors",
    "set_verbosity",
    "display",
    "display_residual",
    "display_progress",
    "recursive_dictionary_substitution",
]
