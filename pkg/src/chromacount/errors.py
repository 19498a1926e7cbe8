"""Exception types shared across the package."""


class ChromacountError(Exception):
    """Base class for package errors."""


class UsageError(ChromacountError):
    """Invalid arguments or parameters (CLI exit code 2)."""


class GraphFormatError(UsageError):
    """Malformed edge-list input."""


class CapabilityError(ChromacountError):
    """Request exceeds a documented size/work cap (CLI exit code 3)."""


class DegenerateVarianceError(ChromacountError):
    """The count statistic has zero variance (no copies, or a forced value)."""
