"""Exception hierarchy shared by all discrimlab modules.

Everything raised on bad *data* derives from DiscrimlabError so callers
(notably the CLI) can distinguish user/data problems from genuine bugs.
"""


class DiscrimlabError(Exception):
    """Base class for all data/domain errors raised by this package."""


# --- linear algebra ---------------------------------------------------------

class NotPositiveDefinite(DiscrimlabError):
    """A matrix required to be SPD has a non-positive pivot."""


class NonConvergence(DiscrimlabError):
    """An iterative solver hit its sweep cap without converging."""


# --- datasets ---------------------------------------------------------------

class ParseError(DiscrimlabError):
    """Malformed CSV input (bad numeric field, ragged row, no data)."""


class MissingColumn(DiscrimlabError):
    """A named column is absent from the CSV header."""


class EmptyGroup(DiscrimlabError):
    """A group with no observations where at least one is required."""


class DegenerateGroup(DiscrimlabError):
    """A group too small for the requested statistic (e.g. covariance)."""


class IndexOutOfRange(DiscrimlabError):
    """A 1-based variable index outside 1..p."""


class DivisionByZero(DiscrimlabError):
    """A ratio transform or index hit a zero denominator."""


# --- statistics -------------------------------------------------------------

class SingularCovariance(DiscrimlabError):
    """A covariance matrix that must be invertible is singular."""


class SingularWithin(DiscrimlabError):
    """The pooled within-group SSCP matrix W is singular."""


class TooFewRows(DiscrimlabError):
    """Sample size insufficient for the statistic (n <= p)."""


class DomainError(DiscrimlabError):
    """Scalar function argument outside its domain."""


class DegenerateConstraint(DiscrimlabError):
    """Contrast constraints whose null space is not one-dimensional."""


class DegenerateVariable(DiscrimlabError):
    """A variable with zero spread inside a group."""


class ZeroVector(DiscrimlabError):
    """A direction comparison received an all-zero vector."""


class LengthMismatch(DiscrimlabError):
    """Two label sequences of unequal length."""


class DimensionMismatch(DiscrimlabError):
    """Vector/matrix dimensions incompatible with the fitted object."""


class NonPositiveMeasurement(DiscrimlabError):
    """A physical measurement (length/width) that must be positive is not."""


class DegenerateBinning(DiscrimlabError):
    """Histogram cell width not positive."""
