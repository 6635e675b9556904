"""Exception types shared across the package."""


class SemicommError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(SemicommError, ValueError):
    """Operands have incompatible or non-square shapes."""


class DomainError(SemicommError, ValueError):
    """An input lies outside the domain of an operation (e.g. not positive)."""


class InputError(SemicommError, ValueError):
    """Malformed serialized input (matrix JSON, instance files)."""

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UsageError(SemicommError, ValueError):
    """Unknown family, command or option combination."""


class GenerationError(SemicommError, RuntimeError):
    """A randomized generator exhausted its retry budget."""
