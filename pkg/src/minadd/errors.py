"""Exception types shared across the package."""


class MinaddError(Exception):
    """Base class for all package errors."""


class ValidationError(MinaddError):
    """A set description violates a structural invariant."""


class ResidueOutOfRange(ValidationError):
    pass


class Y0NotNegative(ValidationError):
    pass


class Y0ResidueOutsideX(ValidationError):
    pass


class Y1ResidueInsideX(ValidationError):
    pass


class DuplicateElement(ValidationError):
    pass


class EmptySet(ValidationError):
    pass


class PeriodOverflow(MinaddError):
    """A lifted period exceeds the configured maximum."""


class ModulusMismatch(MinaddError):
    pass


class BudgetExceeded(MinaddError):
    """Heuristic search ran out of its node budget (means "not found")."""


class NotSingleton(MinaddError):
    pass


class CapExceeded(MinaddError):
    """The naive reference was asked to run above its hard size cap."""


class CertificateInvalid(MinaddError):
    pass


class WindowTooSmall(MinaddError):
    pass


class MarginTooSmall(MinaddError):
    pass


class StructuralPremiseViolated(MinaddError):
    pass


class ExclusionCollision(MinaddError):
    """An excluded point of the inductive construction fell into the
    already-built prefix; unreachable under the default offset rule."""


class PrefixTooShort(MinaddError):
    pass


class ParseError(MinaddError):
    """A set-description or record file could not be parsed."""
