import copy


VERBOSITY = {"level": 1}


def set_verbosity(level):
    """Sets the console verbosity used by ``display`` helpers.

    Parameters
    ----------
    level : int
        0 silences everything, 1 prints stage messages and 2 also prints
        the residuals computed at each stage.
    """
    if level not in (0, 1, 2):
        raise ValueError(f"Verbosity level {level} is not valid.")
    VERBOSITY["level"] = level


def display(message, level=1):
    """Prints a stage message if the verbosity allows it."""
    if VERBOSITY["level"] >= level:
        print(message, flush=True)


def display_residual(report, level=2):
    """Prints the name and max-norm of a residual report.

    Parameters
    ----------
    report : ResidualReport
        Report to print.
    level : int
        Minimum verbosity needed.
    """
    if VERBOSITY["level"] >= level:
        print(
            f"  {report.name:<32s} max = {report.max:{12}.{4}e}  "
            f"masked = {report.masked_fraction:.3f}",
            flush=True,
        )


def display_progress(x, x_end):
    """Displays progress of an integration along x."""
    if VERBOSITY["level"] >= 2:
        print(f"Integrated up to x = {x:{10}.{4}} of {x_end:{10}.{4}}", flush=True)


def get_list(dictionary):
    return list(dictionary.keys())


def recursive_dictionary_substitution(dictionary, default):
    """Fills the keys missing in ``dictionary`` with the ones in ``default``.

    Nested dictionaries are completed recursively and defaults are deep
    copied so the module level dictionaries are never shared.
    """
    keys = get_list(default)
    for key in keys:
        if key not in dictionary:
            dictionary[key] = copy.deepcopy(default[key])
        elif isinstance(default[key], dict):
            recursive_dictionary_substitution(dictionary[key], default[key])
