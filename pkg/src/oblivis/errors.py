"""Exception hierarchy shared across the protocol modules."""


class OblivisError(Exception):
    """Base class for all package errors."""


class ParameterError(OblivisError):
    """A precondition on arguments or configuration was violated."""


class GroupError(OblivisError):
    """Group generation failed or an element is outside the subgroup."""


class PaddingError(OblivisError):
    """A padded message failed the strict length/zero-fill decode."""


class AbortError(OblivisError):
    """Sender-side consistency check failed; the session aborts."""

    def __init__(self, message, role=None, phase=None):
        super().__init__(message)
        self.role = role
        self.phase = phase


class RetrievalError(OblivisError):
    """Trial decryption produced zero or multiple tag matches."""


class KeyMismatchError(OblivisError):
    """Ciphertext fingerprint does not match the supplied key."""


class CapacityError(OblivisError):
    """A value does not fit the homomorphic plaintext space."""


class SessionError(OblivisError):
    """Single-use session material was reused or misordered."""
