"""Exception hierarchy shared by every module."""


class GossipError(Exception):
    """Base class for domain errors raised by this package."""


class ParameterError(GossipError, ValueError):
    """Arguments outside the supported parameter range."""


class StructureError(GossipError, ValueError):
    """Malformed input: wrong block size, duplicate or out-of-range point, bad symbol."""


class ConsistencyError(GossipError):
    """A counting identity failed, so the input cannot be what it claims to be."""


class ResourceError(GossipError):
    """Work would exceed a configured ceiling."""


class NoShortestCode(ParameterError):
    """The binomial ratio giving the shortest length is not an integer."""


class ModelError(GossipError):
    """A coalition or word lies outside the pirate model."""


class IntegrityError(GossipError):
    """A pirate word carries a symbol that no row of the code owns."""


class ProvenanceError(GossipError):
    """The operation needs the design a code was built from."""


class ParseError(GossipError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
