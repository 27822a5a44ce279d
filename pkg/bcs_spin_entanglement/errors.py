"""
Errors Module

Exception hierarchy shared by the numerics modules and the command line.
Library functions raise these; only ``main`` turns them into exit codes.
"""


class SpinEntanglementError(Exception):
    """Base class for every error raised by this package."""


class ParameterDomainError(SpinEntanglementError, ValueError):
    """A model parameter or query lies outside its domain."""


class GridError(SpinEntanglementError, ValueError):
    """An energy grid or parameter list is empty, unsorted or malformed."""


class CapacityError(SpinEntanglementError, ValueError):
    """The exact oracle was asked for more modes than it can hold densely."""


class NumericalError(SpinEntanglementError, ArithmeticError):
    """A numerical routine failed to produce a trustworthy result."""


class QuadratureError(NumericalError):
    """
    Adaptive quadrature did not converge within its evaluation budget.

    Attributes:
        partial_result (float): Best estimate reached before giving up
        error_estimate (float): Integrator's absolute error estimate
        evaluations (int): Integrand evaluations spent
    """

    def __init__(self, message, partial_result, error_estimate, evaluations=0):
        super().__init__(message)
        self.partial_result = partial_result
        self.error_estimate = error_estimate
        self.evaluations = evaluations

    def __reduce__(self):
        # scan workers send failures back through pickling
        return (self.__class__, (str(self), self.partial_result,
                                 self.error_estimate, self.evaluations))
