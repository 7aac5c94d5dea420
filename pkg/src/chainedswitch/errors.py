"""Exception hierarchy shared by all modules."""


class ChainedFormError(ValueError):
    """Base class for every error raised by this package."""


class InvalidArgumentError(ChainedFormError):
    pass


class InvalidFrequencyError(ChainedFormError):
    """Raised when omega * T is not a positive integer multiple of 2*pi."""


class OutOfRangeError(ChainedFormError):
    pass


class InvalidStepError(ChainedFormError):
    """Raised when the integration step does not tile a phase duration."""


class ProblemParseError(ChainedFormError):
    """Problem file is missing, unreadable or structurally malformed."""
