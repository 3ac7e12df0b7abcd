"""Exception and warning types shared across the package."""


class OutOfRegimeError(ValueError):
    """Equation parameters fall outside the regime a routine supports."""


class NotApplicableError(ValueError):
    """Requested quantity is undefined for the given criticality index."""


class NonConvergenceError(RuntimeError):
    """An iterative scheme (shooting, bracketing, root find) failed."""


class ConsistencyError(RuntimeError):
    """Redundant formulas for the same quantity disagree beyond tolerance."""


class InstabilityError(RuntimeError):
    """Time stepping lost conservation without triggering a blow-up alarm."""


class GridResolutionWarning(UserWarning):
    """Grid functionals changed too much under coarsening; refine the grid."""
