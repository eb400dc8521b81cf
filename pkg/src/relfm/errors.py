"""Exception hierarchy.

Every precondition failure raised by the library derives from
:class:`DomainError`; the CLI maps those to exit code 1.  Malformed
configuration files raise :class:`ConfigError` (exit code 2).
"""


class DomainError(ValueError):
    """A value violates a documented invariant or precondition."""

    invariant = "domain"


class DeterminantError(DomainError):
    invariant = "det = 1"


class OrientationReversingError(DeterminantError):
    """Raised for det = -1 matrices, which are not in SL(2, Z)."""

    invariant = "det = 1 (got det = -1)"


class ZeroClassError(DomainError):
    invariant = "class is nonzero"


class NotSemistableClassError(DomainError):
    invariant = "rank > 0, or rank = 0 and degree > 0"


class ContextMismatchError(DomainError):
    invariant = "operands share a context"


class NonZeroFibreDegreeError(DomainError):
    invariant = "fibre degree = 0"


class OddShiftError(DomainError):
    invariant = "shift is even"


class ShapeMismatchError(DomainError):
    invariant = "element shape matches group"


class InvalidActionError(DomainError):
    invariant = "action is a well-defined anti-homomorphism into Aut"


class InvalidGroupError(DomainError):
    invariant = "multiplication table defines a group"


class InvalidContextError(DomainError):
    invariant = "context is valid"


class WrongModeError(DomainError):
    invariant = "endomorphism context mode"


class NotIsometricError(DomainError):
    invariant = "f^dagger = f^-1"


class NotInU0Error(DomainError):
    invariant = "beta is an isogeny"


class ConfigError(Exception):
    """The configuration document is malformed."""
