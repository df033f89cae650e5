"""Exception and warning types shared across the package."""


class AsyncBpError(Exception):
    """Base class for all package errors."""


# -- matrix / rate errors -------------------------------------------------

class NegativeRate(AsyncBpError):
    """An off-diagonal intensity entry is negative."""


class RowSumNonzero(AsyncBpError):
    """An intensity-matrix row does not sum to zero within tolerance."""


class AbsorbingState(AsyncBpError):
    """A state has zero exit rate where a positive rate is required."""


class NonpositiveRate(AsyncBpError):
    """A rate parameter that must be positive is zero or negative."""


# -- belief propagation errors --------------------------------------------

class DomainMismatch(AsyncBpError):
    """A message or table has the wrong length for the variable it covers."""


class ZeroBelief(AsyncBpError):
    """All belief mass vanished — contradictory evidence for this model."""


class TooLarge(AsyncBpError):
    """The joint state space exceeds the exact-computation budget."""


# -- model / config errors -------------------------------------------------

class ParseError(AsyncBpError):
    """A config document is not syntactically valid."""


class SchemaError(AsyncBpError):
    """A config document is structurally incomplete or has unknown keys."""


class ValidationError(AsyncBpError):
    """A config document parsed but violates a semantic invariant."""


class TopologyError(AsyncBpError):
    """A room adjacency graph is unusable (e.g. disconnected)."""


class ParamError(AsyncBpError):
    """Domain rate parameters violate a required constraint."""


# -- engine errors ----------------------------------------------------------

class NonpositiveInterval(AsyncBpError):
    """A transition table was requested over a non-positive time interval."""


class ClockNotMonotone(AsyncBpError):
    """An update was requested at or before the newest subnode's time."""


class EmptyHistory(AsyncBpError):
    """A belief was requested from a supernode with no subnodes."""


# -- simulation errors -------------------------------------------------------

class StepTooCoarse(AsyncBpError):
    """The generating step is too large for the fastest rate in the model."""


class NoBeliefYet(AsyncBpError):
    """No reported belief exists at or before an evaluation time."""


class StepCoarseWarning(UserWarning):
    """The generating step is larger than recommended but still usable."""


class NoBeliefWarning(UserWarning):
    """A room was skipped at an evaluation time because it had no report."""
