"""Exception types shared across the package."""


class ParamineError(Exception):
    """Base class for all package-specific errors."""


class EmptyCorpusError(ParamineError):
    """Raised when counts or probabilities are requested over zero lines."""


class UnknownPhraseError(ParamineError):
    """Raised when a score is requested for a phrase absent from the table."""


class NoCooccurrenceError(ParamineError):
    """Raised when a pair has zero joint probability wherever it was looked up."""


class MissingPairError(ParamineError):
    """Raised when annotated pairs are absent from the ranked list they refer to."""


class ConflictError(ParamineError):
    """Raised when a judgment submission contradicts assignment or store state."""
