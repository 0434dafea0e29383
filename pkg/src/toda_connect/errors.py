"""Exception hierarchy shared by all modules."""


class TodaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TodaError, ValueError):
    """An argument lies outside the domain of the requested map."""


class SingularMatrix(TodaError, ArithmeticError):
    """A 3x3 matrix is too close to singular to invert."""


class InvalidParams(TodaError, ValueError):
    """Connection parameters violate their algebraic constraints."""


class PoleError(TodaError, ArithmeticError):
    """Gamma function evaluated at (or on the cut near) a pole."""


class DegenerateError(TodaError, ArithmeticError):
    """Quantity is undefined on the trivial orbit (s1 = 0)."""


class StepUnderflow(TodaError, ArithmeticError):
    """Adaptive step size collapsed below the resolvable threshold."""


class NonFinite(TodaError, ArithmeticError):
    """Integrator state became NaN or infinite."""


class WindowTooShort(TodaError, ValueError):
    """Sample window too short for the requested estimator."""


class NoConvergence(TodaError, ArithmeticError):
    """An iteration hit its cap without meeting its tolerance."""


class AmplitudeTooSmall(TodaError, ArithmeticError):
    """Oscillation amplitude too small for the phase to be identifiable."""


class PhaseUndefined(TodaError, ValueError):
    """Phase comparison between a defined and an undefined phase."""


class OnContour(TodaError, ValueError):
    """Evaluation point lies on the jump contour |zeta| = 1."""
