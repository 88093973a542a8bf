"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A precondition on an argument was violated."""


class ParityError(ParameterError):
    """An operation requiring an odd modulus received an even one."""


class SizeLimitError(ParameterError):
    """A requested construction exceeds the configured size bounds."""


class ConstructionError(RuntimeError):
    """Randomized block sampling exhausted its retry budget."""


class SetFormatError(Exception):
    """A set file does not parse under the documented formats."""
