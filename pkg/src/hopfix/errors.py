"""Exception types raised by the library."""


class NumericalError(RuntimeError):
    """An iterative procedure failed to reach its tolerance."""


class RefinementFailure(NumericalError):
    """Newton refinement stalled; carries the best residual seen."""

    def __init__(self, message: str, best_residual: float):
        super().__init__(message)
        self.best_residual = best_residual


class InconsistencyError(RuntimeError):
    """A numeric cross-check contradicts a theoretical label."""


class DegenerateBifurcationError(ValueError):
    """beta sits on (or within the exclusion window of) a bifurcation value."""


class UnsupportedFaceError(ValueError):
    """Face is not simplicial / outside the supported combinatorics."""


class CipsViolationError(ValueError):
    """A required separation margin is not positive."""


class EpsilonTooLargeError(ValueError):
    """Thickening epsilon exceeds what the margin allows."""


class NoSideFacetsError(ValueError):
    """The region is full-dimensional: there are no side facets."""
