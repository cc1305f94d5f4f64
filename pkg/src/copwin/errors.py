"""Exception types shared across the package."""


class CopwinError(Exception):
    """Base class for all package-specific errors."""


class EdgeListParseError(CopwinError):
    """Malformed edge-list input (bad line, self-loop, duplicate arc, id out of range)."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class UnsupportedVariantError(CopwinError, ValueError):
    """Game variant combination outside the supported set."""


class StateBudgetExceededError(CopwinError):
    """A solve exceeded its arena-transition budget.

    Deliberately distinct from a game verdict: callers must never
    interpret it as a robber win.
    """

    def __init__(self, budget, explored):
        super().__init__(
            f"state budget exceeded: {explored} arena transitions > budget {budget}"
        )
        self.budget = budget
        self.explored = explored


class SizeLimitError(CopwinError, ValueError):
    """Instance exceeds a solver's documented exact-computation size limit."""


class CertificateError(CopwinError):
    """Malformed certificate or certificate/graph fingerprint mismatch."""


class ConstructionUnavailableError(CopwinError, NotImplementedError):
    """A published gadget construction has not been transcribed into code."""
