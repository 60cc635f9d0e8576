"""Exception types shared across the package."""


class AlgebraError(Exception):
    pass


class UnsupportedOperation(AlgebraError):
    pass


class PoleError(AlgebraError):
    """A substitution sent a denominator to zero."""


class DivisibilityError(AlgebraError):
    pass


class ParseError(AlgebraError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class AdmissibilityError(AlgebraError):
    """Raised when a rational function has no formal Laurent expansion of the required shape."""


class OrderError(AlgebraError):
    """Pole of order higher than one where a simple pole was required."""


class DomainError(KeyError):
    def __init__(self, point):
        super().__init__(point)
        self.point = point

    def __str__(self):
        n, a = self.point
        return f"point outside table domain: n={n} a={tuple(a)}"


class RegistryError(KeyError):
    pass


class UsageError(ValueError):
    pass


class ValidationError(ValueError):
    pass
