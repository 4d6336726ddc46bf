"""Exception hierarchy shared by all modules.

Each class carries the CLI exit code it maps to: 1 for domain errors,
2 for malformed input, 3 when a resource cap is hit.
"""


class LCSystemsError(Exception):
    exit_code = 1


class DomainError(LCSystemsError, ValueError):
    """A well-formed input that violates an operation's precondition."""


class StructuralError(LCSystemsError, ValueError):
    """Malformed input: non-square or non-symmetric Gram data, bad JSON shape."""

    exit_code = 2


class ResourceError(LCSystemsError):
    exit_code = 3


class UnsupportedEntryError(DomainError):
    pass


class NotContractibleError(DomainError):
    pass


class NotBlowableError(DomainError):
    pass


class ParameterError(DomainError):
    """A catalog parameter assignment fails a constraint or side condition."""


class DegenerateConfigurationError(DomainError):
    pass


class NotASingularityError(DomainError):
    pass
