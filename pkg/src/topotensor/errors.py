"""Exception hierarchy shared by every module in the package."""


class TopoTensorError(Exception):
    """Base class for all package errors."""


class DimsError(TopoTensorError, ValueError):
    """Operand dimensions do not agree."""


class ShapeError(TopoTensorError, ValueError):
    """A cubical (all dims equal) tensor was required."""


class ModeError(TopoTensorError, ValueError):
    """Mode index outside 1..d."""


class SpecError(TopoTensorError, ValueError):
    """Invalid generator specification."""


class SymmetryError(TopoTensorError, ValueError):
    """A symmetric tensor was required."""


class StrategyError(TopoTensorError, ValueError):
    """Complex construction strategy does not apply to the tensor."""


class SchemeError(TopoTensorError, ValueError):
    """Coefficient scheme does not match the Betti signature."""


class FormatError(TopoTensorError, ValueError):
    """Malformed DTEN / scpx / config input."""


class ConvergenceError(TopoTensorError, RuntimeError):
    """No solver start converged.

    Attributes
    ----------
    best_residual : float
        Smallest residual reached by any start.
    """

    def __init__(self, message, best_residual):
        super().__init__(message)
        self.best_residual = float(best_residual)
