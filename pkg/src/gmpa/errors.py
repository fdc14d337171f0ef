"""Exception hierarchy.

BugSignal subclasses mark failures of statements the library re-checks after
constructing them; they indicate a defect in this implementation (or a genuinely
false input claim), never a mere invalid input.
"""

from __future__ import annotations


class GmpaError(Exception):
    """Base class for all library errors."""


class TableIncomplete(GmpaError):
    """An operation table is missing entries or has out-of-range values."""


class ShapeMismatch(GmpaError):
    """Structural components do not fit together."""


class AmbientMismatch(GmpaError):
    """Two submodules do not share an ambient module."""


class RingAxiomError(GmpaError):
    """A ring build step failed verification; carries the report."""

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report


class CarrierTooLarge(GmpaError):
    """A carrier exceeds the configured element cap."""


class BudgetExceeded(GmpaError):
    """A configured work budget was exhausted."""


class SearchSpaceExceeded(BudgetExceeded):
    """A coordinate-system search ran out of budget before resolving."""


class NotUnitalAction(GmpaError):
    """An operation requires a unital partial action."""


class NotUnitalComponent(GmpaError):
    """An operation requires unital component rings or actions."""


class NotRegular(GmpaError):
    """An operation requires a regular partial action."""


class NotSymmetric(GmpaError):
    """The diagonal ideal family is not symmetric."""


class NotIdempotentGenerated(GmpaError):
    """An ideal is not generated by a central idempotent."""


class NotInvariant(GmpaError):
    """A subset is not invariant under the given global action."""


class NotConnected(GmpaError):
    """The groupoid is not connected."""


class NotGroupType(GmpaError):
    """The groupoid action admits no group-type system."""


class DomainError(GmpaError):
    """A partial map was evaluated outside its domain."""


class DatumInvalid(GmpaError):
    """Datum verification failed; carries the report."""

    def __init__(self, report):
        super().__init__(report.summary())
        self.report = report


class HypothesisFails(GmpaError):
    """A stated hypothesis of the requested construction fails."""


class SystemInvalid(GmpaError):
    """A claimed coordinate system does not satisfy the delta identity."""


class ProjectionInconsistent(GmpaError):
    """The block projection produced group-element-dependent coefficients."""

    def __init__(self, message, per_g=None):
        super().__init__(message)
        self.per_g = per_g


class BugSignal(GmpaError):
    """A re-checked theorem conclusion failed: implementation defect."""


class AssociativityViolation(BugSignal):
    """Block products violate the associativity relation; carries a witness."""


class TheoremCheckFailed(BugSignal):
    """An instance-level theorem re-check failed."""


class CorollaryCheckFailed(BugSignal):
    """An instance-level corollary re-check failed."""


class ClosureViolation(BugSignal):
    """A promoted ideal failed the independent closure check."""


class CoincidenceCheckFailed(BugSignal):
    """Induced and datum-built actions disagree."""


class EquivalenceFailed(BugSignal):
    """Two verdicts that a theorem ties together disagree."""


class BlockMismatch(BugSignal):
    """Blockwise and direct computations of the same object disagree."""


class FormulaMismatch(BugSignal):
    """A transcribed closed-form table disagrees with the generic pipeline."""


class IsomorphismCheckFailed(BugSignal):
    """A constructed map failed its ring-isomorphism audit."""


class ChainBroken(BugSignal):
    """A stage of the skew-ring isomorphism chain failed."""

    def __init__(self, stage, message):
        super().__init__(f"{stage}: {message}")
        self.stage = stage
