"""Exception types shared across the library.

Every error raised by a public operation derives from PhasecycleError so
callers (and the CLI) can distinguish library failures from bugs.
"""


class PhasecycleError(Exception):
    """Base class for all phasecycle errors."""


class DomainError(PhasecycleError, ValueError):
    """An input lies outside the operation's domain (non-positive field,
    NaN, inconsistent cycle parameters, ...)."""


class NotAnEngineError(PhasecycleError):
    """Cycle parameters do not extract positive work from the hot bath.

    ``net_work_sign`` is -1, 0 or +1: the sign of the net extracted work
    the rejected parameters would produce.
    """

    def __init__(self, message: str, net_work_sign: int = 0):
        super().__init__(message)
        self.net_work_sign = net_work_sign


class DegenerateGeneratorError(PhasecycleError):
    """The rate generator is identically zero; the stationary state is not
    unique."""


class IntegrationError(PhasecycleError):
    """The ODE integrator exceeded its step budget.  Carries the last
    accepted time and state."""

    def __init__(self, message: str, t_last: float, y_last):
        super().__init__(message)
        self.t_last = t_last
        self.y_last = y_last


class ConvergenceError(PhasecycleError):
    """An iterative procedure (period map, quadrature, optimizer polish)
    failed to reach its tolerance."""


class NoInteriorMaximumError(PhasecycleError):
    """The objective has no interior maximum; the iterates escaped toward
    the domain boundary."""


class UndefinedPhaseError(PhasecycleError):
    """A phase is requested between (numerically) orthogonal states."""


class PathRefinementError(PhasecycleError):
    """Consecutive path samples are (numerically) orthogonal; the path
    needs a finer discretization."""
