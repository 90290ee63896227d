"""Exception hierarchy shared by every module."""


class CosignKitError(Exception):
    """Base class for all library errors."""


class MalformedInput(CosignKitError, ValueError):
    """A value violates its structural invariants (bad mask, duplicate set, ...)."""


class NotCrossing(CosignKitError):
    def __init__(self, pair):
        super().__init__(f"family is not crossing; witness pair {pair}")
        self.pair = pair


class ConditionViolationError(CosignKitError):
    """The feasibility condition fails; ``violation`` carries the witness."""

    def __init__(self, violation):
        super().__init__(f"feasibility condition violated: {violation}")
        self.violation = violation


class Conflict(CosignKitError):
    """An element was forced to both signs.

    Raised only if an algorithm invariant is breached; the property suite
    checks that it never fires on condition-satisfying inputs.
    """

    def __init__(self, element):
        super().__init__(f"element {element} forced to both signs")
        self.element = element


class CapacityExceeded(CosignKitError):
    pass


class EmptyGround(CosignKitError):
    pass


class TooLarge(CosignKitError):
    pass


class Inconsistent(CosignKitError):
    pass


class InvalidInstance(CosignKitError):
    def __init__(self, violation):
        super().__init__(f"invalid circle instance: {violation}")
        self.violation = violation


class InternalInvariantBreach(CosignKitError):
    """An invariant that holds on valid inputs failed; this is a bug, not bad input."""


class NotProper(CosignKitError):
    pass


class NotPlanar(CosignKitError):
    pass


class NotSuperProper(CosignKitError):
    pass


class NoSuchDicut(CosignKitError):
    pass


class ConfigurationAbsent(CosignKitError):
    pass


class Infeasible(CosignKitError):
    """The exhaustive base solver found no dijoin pair; proper inputs should never get here."""


class GenerationFailed(CosignKitError):
    pass
