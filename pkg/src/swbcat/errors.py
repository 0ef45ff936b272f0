"""Exception types shared across the package."""


class SWBError(Exception):
    """Base class for domain errors (mapped to exit code 1 by the CLI)."""


class DegreeTooHigh(SWBError):
    def __init__(self, vertex, degree):
        super().__init__(f"vertex {vertex!r} has degree {degree} > 2")
        self.vertex = vertex
        self.degree = degree


class CapExceeded(SWBError):
    pass


class BadPermutation(SWBError):
    pass


class SiteOutOfRange(SWBError):
    pass


class NotAdmissible(SWBError):
    pass


class HeightOutOfRange(SWBError):
    pass


class IndexOutOfRange(SWBError):
    pass


class NotAnInsertion(SWBError):
    pass


class ParityViolation(SWBError):
    pass


class UnknownArc(SWBError):
    pass


class NotInternal(SWBError):
    pass


class NotAComponent(SWBError):
    pass


class TypeMismatch(SWBError):
    pass


class NotJuxtaposable(SWBError):
    pass


class HasInternalComponents(SWBError):
    pass


class EmptyNorth(SWBError):
    pass


class SetupViolated(SWBError):
    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("setup violated: " + "; ".join(self.failed))


class ArityMismatch(SWBError):
    pass


class InvalidDatum(SWBError):
    """A frame or pairing violates a structural invariant."""


class UnsupportedKind(SWBError):
    pass


class SchemaError(SWBError):
    """A document does not match the schema; ``path`` is a JSON pointer."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path or '/'}: {reason}")
        self.path = path
        self.reason = reason


class InvariantError(SWBError):
    """A well-formed document describes an invalid object."""

    def __init__(self, reason: str, pair=None):
        super().__init__(reason if pair is None else f"{reason}: {pair!r}")
        self.reason = reason
        self.pair = pair
