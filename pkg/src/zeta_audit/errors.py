"""Exception hierarchy shared by the evaluators and the audit engine."""


class AuditError(Exception):
    """Base class for every error raised by zeta_audit."""


class InvalidInput(AuditError, ValueError):
    """Arguments violate a documented precondition (bad index, k == m, ...)."""


class FactorialCapError(InvalidInput):
    pass


class DomainError(AuditError, ValueError):
    """A formula is undefined at the requested point (branch cut, log of a non-positive value)."""


class PoleError(DomainError):
    pass


class DegenerateError(DomainError):
    """Parameters collapse (d == 0, relation denominator vanishes)."""


class ConsistencyError(AuditError, ArithmeticError):
    """An internal postcondition check failed."""
