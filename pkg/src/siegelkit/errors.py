"""Exception hierarchy shared by all siegelkit modules."""


class SiegelKitError(Exception):
    """Base class for all errors raised by siegelkit."""


class DimensionMismatch(SiegelKitError):
    """Operands have incompatible shapes."""


class TypeMismatch(SiegelKitError):
    """Group elements or torus points built over different lattice types."""


class DegenerateForm(SiegelKitError):
    """A symplectic Gram matrix has zero determinant."""


class NotAntisymmetric(SiegelKitError):
    """A Gram matrix fails G^T = -G."""


class NotUnimodular(SiegelKitError):
    """An integer matrix expected to be invertible over Z is not."""


class InvalidTaming(SiegelKitError):
    """A complex structure fails the taming axioms beyond tolerance."""


class NonPositiveY(SiegelKitError):
    """The imaginary part of a Siegel upper half space point is not positive."""


class NotSymplectic(SiegelKitError):
    """A matrix does not preserve the given symplectic form."""


class BadSignature(SiegelKitError):
    """A point metric is not Lorentzian of signature (-,+,+,+)."""


class InvalidFundamentalForm(SiegelKitError):
    """A fundamental form sample fails validation against its taming."""


class InvalidComplex(SiegelKitError):
    """A twisted complex violates boundary, flatness or transport axioms."""


class NotACocycle(SiegelKitError):
    """A cochain fails the cocycle condition of the twisted differential."""


class InvalidModel(SiegelKitError):
    """A finite scalar model violates its closure or validation axioms."""


class BoundTooLargeForBudget(SiegelKitError):
    """A bounded enumeration would exceed the configured search budget."""


class ParseError(SiegelKitError):
    """Malformed JSON input to the CLI or the codecs."""
