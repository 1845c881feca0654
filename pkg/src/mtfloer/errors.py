"""Exception types shared across the package."""


class MtfloerError(Exception):
    """Base class for all package-specific errors."""


class BadParams(MtfloerError, ValueError):
    """Parameters outside the domain of a computation (CLI exit code 2)."""


class BadGenus(BadParams):
    """Genus below the minimum the construction needs."""


class ZeroTwist(BadParams):
    """The twist power n must be a nonzero integer."""


class TorsionUnsupported(MtfloerError, ValueError):
    """An operand carries torsion where only free groups are defined."""


class GenusMismatch(MtfloerError, ValueError):
    """Exterior-algebra operands live over surfaces of different genus."""


class NotAComplex(MtfloerError, ValueError):
    """Differentials fail shape checks or do not square to zero."""


class GateFailure(MtfloerError, RuntimeError):
    """A pipeline cross-check failed; the run must abort (CLI exit code 3)."""


class UnknownTable(MtfloerError, KeyError):
    """No reference table is registered under the requested name."""
