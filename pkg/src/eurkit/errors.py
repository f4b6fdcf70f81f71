"""Exception hierarchy shared by every eurkit module."""


class EurkitError(ValueError):
    """Base class for all eurkit errors."""


class DimensionError(EurkitError):
    """Operand shapes or subsystem dimensions are incompatible."""


class HermiticityError(EurkitError):
    """A matrix that must be Hermitian is not."""


class DomainError(EurkitError):
    """A parameter lies outside the domain of the operation."""

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class PsdError(EurkitError):
    """A density matrix has an eigenvalue below the PSD tolerance."""


class MubVerificationError(EurkitError):
    """A basis pair that must be mutually unbiased is not."""


class InvariantError(EurkitError):
    """Serialized input violates a documented invariant.

    ``invariant`` names the violated property, ``source`` the file or
    object being parsed and ``location`` the offending entry, if known.
    """

    def __init__(self, invariant, detail, source=None, location=None):
        self.invariant = invariant
        self.detail = detail
        self.source = source
        self.location = location
        where = ""
        if source is not None:
            where += f"{source}: "
        if location is not None:
            where += f"at {location}: "
        super().__init__(f"{where}{invariant} violated ({detail})")
