"""
Exception hierarchy for spherelab.

Every failure raised by the library is a SphereLabError. The base class
derives from ValueError so callers that only guard against bad input keep
working. The CLI maps these to exit codes; library code never exits.
"""

from __future__ import annotations

from typing import Any, Optional, Tuple


class SphereLabError(ValueError):
    """Root of all spherelab errors."""


# splits / punctured complex
class InvalidSplit(SphereLabError):
    pass


class GroundMismatch(SphereLabError):
    pass


class NotIntersecting(SphereLabError):
    pass


class NoEssentialSpheres(SphereLabError):
    pass


class BelowWhitneyRegime(SphereLabError):
    """Kneser/size-2 questions need at least five boundary labels."""


class SizeTwoInput(SphereLabError):
    pass


# disks
class InvalidDisk(SphereLabError):
    pass


class NotGood(SphereLabError):
    def __init__(self, reason: str, detail: str = "") -> None:
        self.reason = reason
        message = reason if not detail else f"{reason}: {detail}"
        super().__init__(message)


class LabelMismatch(SphereLabError):
    pass


# glued model
class ManifoldMismatch(SphereLabError):
    pass


class NotMaximal(SphereLabError):
    pass


class NotDisjoint(SphereLabError):
    def __init__(self, pair: Tuple[Any, Any]) -> None:
        self.pair = pair
        super().__init__(f"spheres intersect: {pair[0]} and {pair[1]}")


class DualGraphError(SphereLabError):
    """The cut procedure produced something that is not a pants dual graph."""


class NotMember(SphereLabError):
    pass


class NotSplitSphere(SphereLabError):
    pass


class OutOfModel(SphereLabError):
    """A required sphere lies outside the interior/once-crossing model."""


class ModelInconsistency(SphereLabError):
    pass


# rigid sets
class CannotPlaceGoodPairs(SphereLabError):
    pass


class NotDetectable(SphereLabError):
    pass


class NotSplit(SphereLabError):
    pass


class SplitPairError(SphereLabError):
    def __init__(self, reason: str, detail: str = "") -> None:
        self.reason = reason
        message = reason if not detail else f"{reason}: {detail}"
        super().__init__(message)


class DomainError(SphereLabError):
    pass


class BudgetExhausted(SphereLabError):
    def __init__(self, budget: int, partial: Optional[Any] = None) -> None:
        self.budget = budget
        self.partial = partial
        super().__init__(f"search budget of {budget} nodes exhausted")


# automorphisms / rank two
class TooLarge(SphereLabError):
    pass


class BallTooSmall(SphereLabError):
    pass


class ReducedCaseNote(SphereLabError):
    """Input handled by a preliminary reduction instead of a witness."""

    def __init__(self, case: str) -> None:
        self.case = case
        super().__init__(f"reduced case: {case}")
