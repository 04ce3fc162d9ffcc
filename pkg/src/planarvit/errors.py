"""Exception hierarchy shared by all modules."""


class PlanarVitError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PlanarVitError, ValueError):
    """Input does not describe a valid capacitated plane graph."""


class DisconnectedGraph(ValidationError):
    pass


class NonPositiveCapacity(ValidationError):
    pass


class InvalidRotation(ValidationError):
    pass


class NotPlanarEmbedding(ValidationError):
    pass


class TerminalMissing(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class SameDualVertex(PlanarVitError):
    pass


class TerminalQuery(PlanarVitError, ValueError):
    """A per-vertex query was made for s or t."""


class TerminalDeletion(PlanarVitError, ValueError):
    pass


class NegativeWeight(PlanarVitError, ValueError):
    pass


class NonPositiveDelta(PlanarVitError, ValueError):
    pass


class NonPositiveC(PlanarVitError, ValueError):
    pass


class EmptyBucket(PlanarVitError):
    pass


class OracleTooLarge(PlanarVitError):
    pass


class BadParams(PlanarVitError, ValueError):
    pass


class ParseError(ValidationError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
