"""Exception types raised by the library.

Everything derives from ``GkslError`` so callers can catch broadly, but the
concrete classes are part of the API contract: each operation documents
exactly which of these it may raise.
"""


class GkslError(Exception):
    """Base class for all errors raised by this package."""


class NonSquare(GkslError, ValueError):
    """A square matrix was required."""


class NonHermitianInput(GkslError, ValueError):
    """Input matrix is not Hermitian within the documented tolerance."""


class DimensionMismatch(GkslError, ValueError):
    """Shapes of the inputs are inconsistent with each other."""


class InvalidDimension(GkslError, ValueError):
    """A dimension argument is out of range (e.g. n < 1)."""


class NotHermiticityPreserving(GkslError, ValueError):
    """The map does not satisfy L(A*) = L(A)* within tolerance."""


class NotTraceAnnihilating(GkslError, ValueError):
    """The map does not satisfy tr(L(A)) = 0 within tolerance."""


class InvariantViolation(GkslError, ValueError):
    """A structured value (basis, canonical form) violates its invariants."""


class InternalConsistency(GkslError, RuntimeError):
    """An internal certificate failed; this signals a bug, not bad input."""


class UnsatisfiableClass(GkslError, ValueError):
    """No generator of the requested class exists at this dimension."""


class SingularResolvent(GkslError, ValueError):
    """Resolvent inversion failed; the spectral precondition was violated."""


class LambdaTooSmall(GkslError, ValueError):
    """The resolvent parameter (or power-method step) is not small enough."""


class UnsortedTimes(GkslError, ValueError):
    """Time grids must be non-decreasing and start at t >= 0."""
