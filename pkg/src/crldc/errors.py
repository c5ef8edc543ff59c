"""Exception hierarchy shared across the package."""


class CrldcError(Exception):
    """Base class for all package errors."""


class LengthMismatch(CrldcError):
    """Operand lengths violate an operation's precondition."""


class OutOfRange(CrldcError):
    """A position lies outside the addressed bit string."""


class IndexOutOfRange(CrldcError):
    """A message index lies outside [1, k]."""


class ParamMismatch(CrldcError):
    """Code parameters are inconsistent with the given inputs."""


class UnsupportedLambda(CrldcError):
    """Security parameter below the scheme minimum."""


class MalformedInput(CrldcError):
    """Structurally invalid input (wrong field widths, bad serialization)."""


class InfeasibleTarget(CrldcError):
    """No sample count can reach the requested success probability."""


class EmptyList(CrldcError):
    """Majority vote over an empty list."""


class TTooSmall(CrldcError):
    """Inner-code message length below the construction minimum."""


class BudgetExceeded(CrldcError):
    """An attack cannot fit inside the declared corruption budget."""


class ConfigInvalid(CrldcError):
    """Experiment configuration fails validation."""


class BoundViolated(CrldcError):
    """A measured quantity exceeded its declared bound."""
