"""
Exceptions shared by all qdvol apps.

Pure operations raise these; the ``qdvol`` management command translates them
into :class:`django.core.management.CommandError`.
"""


class QdvolError(Exception):
    code = "error"

    def __init__(self, message: str, code: str = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DomainError(QdvolError, ValueError):
    """
    A precondition of an operation is violated.
    """

    code = "domain"


class MixedPiPowerError(DomainError):
    code = "mixed_pi_power"


class CoordinateError(DomainError):
    code = "coordinate"


class TruncationError(QdvolError):
    """
    A coefficient was read at or beyond the truncation order of a series.
    """

    code = "truncation"

    def __init__(self, exponent: int, order: int):
        super().__init__(
            f"coefficient of t^{exponent} requested from a series known below t^{order}"
        )
        self.exponent = exponent
        self.order = order


class DecompositionError(QdvolError):
    code = "decomposition"


class InconsistencyError(QdvolError):
    code = "inconsistency"
