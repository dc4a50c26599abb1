"""Exception types shared across the package."""


class PermRouteError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(PermRouteError):
    """A value violates a structural invariant (bad permutation, bad port
    labelling, mixed-valency polarization class, malformed instance file...)."""


class DimacsError(PermRouteError):
    """Malformed DIMACS input. Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class CapExceededError(PermRouteError):
    """A brute-force enumeration would exceed its configured cap.

    The caps exist because these enumerations are correctness oracles:
    exceeding one is an error, never a silent approximation.
    """


class GadgetVerificationError(PermRouteError):
    """A gadget's enumerated cycle counts disagree with its required table."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
