"""Exception hierarchy.

Errors split into two families that the CLI maps to distinct exit codes:
``MathematicalFailure`` (a checked identity is false) and
``ResourceFailure`` (an enumeration would exceed its cap).
"""

from __future__ import annotations


class CoringError(Exception):
    """Base class for every error raised by the package."""


class MathematicalFailure(CoringError):
    pass


class ResourceFailure(CoringError):
    pass


class EnumerationTooLarge(ResourceFailure):
    def __init__(self, count: int, cap: int, what: str = "enumeration"):
        self.count = count
        self.cap = cap
        self.what = what
        super().__init__(f"{what}: {count} points exceeds cap {cap}")


class DimensionMismatch(CoringError, ValueError):
    pass


class NotSquare(CoringError, ValueError):
    pass


class NotPrime(CoringError, ValueError):
    pass


class AxiomError(MathematicalFailure):
    """An object failed its axiom checker.

    ``violations`` holds the individual failed identities as strings.
    """

    def __init__(self, name: str, violations: list[str]):
        self.name = name
        self.violations = list(violations)
        shown = "; ".join(self.violations[:5])
        more = f" (+{len(self.violations) - 5} more)" if len(self.violations) > 5 else ""
        super().__init__(f"{name}: {shown}{more}")


class NotAlgebraMap(AxiomError):
    pass


class NotAUnit(MathematicalFailure):
    pass


class NotGrouplike(MathematicalFailure):
    pass


class NotAutomorphism(MathematicalFailure):
    pass


class NotComoduleIso(MathematicalFailure):
    pass


class InvalidDatum(MathematicalFailure):
    pass


class NotGalois(MathematicalFailure):
    pass


class BijectionFailure(MathematicalFailure):
    pass


class DistinguishedPointMissing(MathematicalFailure):
    pass
