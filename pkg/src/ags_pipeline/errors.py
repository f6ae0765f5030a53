"""Exception types shared by the loaders and the pipeline."""


class PipelineError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PipelineError):
    """A file could not be parsed (bad column count, malformed link, ...)."""


class ValidationError(PipelineError):
    """A file parsed but violated a documented invariant."""
