"""Exception types shared across the package."""


class CycleError(ValueError):
    """Cover data contains a directed cycle."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class CapacityError(RuntimeError):
    """An enumeration would exceed the configured bound."""


class NotRankedError(ValueError):
    pass


class NonUniqueError(ValueError):
    pass


class NotReducedError(ValueError):
    pass


class NotFullyCommutativeError(ValueError):
    pass


class NotMinusculeError(ValueError):
    pass


class NotBelowError(ValueError):
    """Element is not below the heap's element in left weak order."""


class MixedParityError(ValueError):
    pass


class InexactDivisionError(ArithmeticError):
    """Polynomial division left a nonzero remainder."""


class MismatchedSizeError(ValueError):
    pass
