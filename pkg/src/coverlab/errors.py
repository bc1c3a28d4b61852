"""Exception hierarchy shared by every coverlab module."""


class CoverlabError(Exception):
    """Base class for all errors raised by coverlab."""


class InputError(CoverlabError, ValueError):
    """Malformed or out-of-contract input."""


class BoundExceeded(CoverlabError):
    """An enumeration would exceed its configured size bound."""


class ParentMismatch(InputError):
    pass


class NotPrime(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class InfiniteIndexMember(CoverlabError):
    """Exact residue verification needs every cover member to have finite index."""


class ImproperPart(InputError):
    pass


class TooFewParts(InputError):
    pass


class PreconditionFailed(InputError):
    pass


class ZeroInput(InputError):
    pass


class CharacteristicMismatch(InputError):
    pass


class BadShift(InputError):
    pass
