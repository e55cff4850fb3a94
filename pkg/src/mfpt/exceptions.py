"""Exception types raised by the package."""

import numpy as np


class SingularMatrixError(np.linalg.LinAlgError):
    """A linear system was singular to working precision."""


class InvalidTransitionMatrixError(ValueError):
    """An array failed transition-matrix validation.

    Attributes
    ----------
    row, col : int or None
        0-based position of the first violation (``col`` is None for
        row-sum violations).
    """

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class ReducibleChainError(ValueError):
    """A computation requiring irreducibility met a reducible chain.

    ``state`` is the 0-based reduction level at which the left row mass
    vanished, when raised from a state-reduction routine.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class UpdateBreakdownError(ArithmeticError):
    """A rank-one update denominator fell below the breakdown threshold.

    Attributes
    ----------
    step : int
        0-based index of the update step that broke down.
    value : float
        The offending denominator.
    """

    def __init__(self, message, step, value):
        super().__init__(message)
        self.step = step
        self.value = value


class MatrixFileError(ValueError):
    """A matrix file could not be parsed.

    ``line`` is the 1-based line number of the first problem when known.
    """

    def __init__(self, message, path=None, line=None):
        super().__init__(message)
        self.path = path
        self.line = line
