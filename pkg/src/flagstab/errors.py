"""Exception types shared across the package."""


class FlagstabError(Exception):
    """Base class for every error raised by flagstab."""


class DimensionMismatch(FlagstabError, ValueError):
    pass


class FieldNotSplit(FlagstabError):
    """An operator has no eigenvalue over the rationals."""


class NotAntisymmetric(FlagstabError, ValueError):
    pass


class NotClosed(FlagstabError, ValueError):
    """A subspace offered as a subalgebra is not closed under the bracket."""


class NotAHomomorphism(FlagstabError, ValueError):
    pass


class NotSolvable(FlagstabError):
    pass


class ZeroModule(FlagstabError):
    pass


class NotFaithful(FlagstabError):
    pass


class InvalidFlag(FlagstabError, ValueError):
    pass


class NotAChain(FlagstabError, ValueError):
    pass


class CapExceeded(FlagstabError):
    """An exhaustive computation would exceed its size cap."""


SizeCap = CapExceeded


class NoFIP(FlagstabError):
    pass


class PreconditionViolated(FlagstabError, ValueError):
    pass


class SignatureMismatch(FlagstabError, ValueError):
    pass


class AtBoundary(FlagstabError):
    pass


class ZeroVector(FlagstabError, ValueError):
    pass


class InvalidChain(FlagstabError, ValueError):
    pass
