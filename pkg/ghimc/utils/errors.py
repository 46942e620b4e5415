"""Exceptions raised by ghimc.

Every error keeps the numbers that triggered it so that reports and the
command line can show them. Errors coming from bad input carry
``exit_code = 2``, errors raised because a certificate did not pass carry
``exit_code = 3``.
"""


class GhimcError(ValueError):
    """Base class of all ghimc errors.

    Parameters
    ----------
    message : str
        Human readable description.
    residual : float, optional
        Value of the quantity that failed its check.
    tolerance : float, optional
        Threshold the residual was compared against.
    node : tuple, optional
        Grid coordinates ``(x, y)`` of the worst node, when meaningful.
    report : dict, optional
        JSON ready record of the computation that failed, kept so that
        callers can still write it out.
    """

    exit_code = 2

    def __init__(self, message, residual=None, tolerance=None, node=None, report=None):
        self.residual = residual
        self.tolerance = tolerance
        self.node = node
        self.report = report
        details = []
        if residual is not None:
            details.append(f"residual={residual:.6e}")
        if tolerance is not None:
            details.append(f"tolerance={tolerance:.3e}")
        if node is not None:
            details.append(f"at (x, y)=({node[0]:.6g}, {node[1]:.6g})")
        if details:
            message = f"{message} [{', '.join(details)}]"
        super().__init__(message)

    def to_dict(self):
        dictionary = {
            "error": type(self).__name__,
            "message": str(self),
            "residual": self.residual,
            "tolerance": self.tolerance,
            "node": None if self.node is None else list(self.node),
        }
        if self.report is not None:
            dictionary["report"] = self.report
        return dictionary


class CertificateError(GhimcError):
    """A computed residual exceeded its configured tolerance."""

    exit_code = 3


# Input errors
class NotImaginary(GhimcError):
    pass


class NotUnit(GhimcError):
    pass


class InvalidGrid(GhimcError):
    pass


class GridMismatch(GhimcError):
    pass


class NotComplexStructure(GhimcError):
    pass


class ParseError(GhimcError):
    pass


class DomainError(GhimcError):
    pass


class AllBranch(GhimcError):
    pass


class BranchPoint(GhimcError):
    pass


class MinimalPoint(GhimcError):
    pass


class Degenerate(GhimcError):
    pass


class NotRevolution(GhimcError):
    pass


# Certificate errors
class NotClosed(CertificateError):
    pass


class NotGHIMC(CertificateError):
    pass


class PathInconsistent(CertificateError):
    pass


class ZeroDenominator(CertificateError):
    pass


class SeedConstraintViolated(CertificateError):
    pass


class NotClassical(CertificateError):
    pass


class NotConformal(CertificateError):
    pass


class Blowup(CertificateError):
    pass
