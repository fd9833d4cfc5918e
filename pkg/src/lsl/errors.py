"""Exception types shared across the package."""


class LslError(Exception):
    """Base class for all package-specific errors."""


class NoSolutionError(LslError):
    """A linear system is inconsistent."""


class OrderLimitExceeded(LslError):
    """Group enumeration passed the configured order bound."""


class RandomnessExhausted(LslError):
    """The meataxe failed to split a module within its trial budget."""


class SplitBudgetExhausted(LslError):
    """Random Fitting splitting of the regular module ran out of attempts."""


class CoverLiftFailed(LslError):
    """No surjection onto the target could be assembled from hom bases."""


class IncompleteRegistry(LslError):
    """A module has a composition factor missing from the simple registry."""


class IngestionError(LslError):
    """Malformed group file, field descriptor, or job parameters."""
