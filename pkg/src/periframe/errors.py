"""Exception taxonomy shared across the package.

The CLI maps these onto its exit codes: format errors are exit 2,
dimension mismatches exit 3, numerical failures exit 4, and everything
else that is a legitimate "no" from the mathematics is exit 1.
"""


class PeriframeError(Exception):
    """Base class for all errors raised by periframe."""


class GraphFormatError(PeriframeError, ValueError):
    """Malformed or invariant-violating graph/params/sublattice document."""


class DimensionMismatchError(PeriframeError, ValueError):
    """Objects built for different ambient dimensions or orbit counts."""


class NotPositiveDefiniteError(PeriframeError, ArithmeticError):
    """Gram matrix outside the open positive definite cone."""


class SingularLatticeError(PeriframeError, ArithmeticError):
    """Lattice basis matrix is not invertible."""


class SearchCapExceeded(PeriframeError, RuntimeError):
    """Automorphism search or coset enumeration exceeded its configured cap."""


class EdgeImageMissingError(PeriframeError, ValueError):
    """A claimed automorphism maps some edge outside the edge set."""


class NotOnLocusError(PeriframeError, ValueError):
    """A parameter point required to lie on a fixed locus does not."""


class CorrectorDivergenceError(PeriframeError, ArithmeticError):
    """Newton corrector failed to converge even at the minimum step size."""
