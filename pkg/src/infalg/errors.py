"""Shared exception types."""


class InfalgError(Exception):
    """Base class for all package errors."""


class UniverseMismatch(InfalgError):
    """Two values built over different universes were combined."""


class BoundExceeded(InfalgError):
    """An exhaustive enumeration was asked to exceed its configured bound."""


class MalformedInstance(InfalgError):
    """Input tables are ragged, out of range, or otherwise unusable."""


class PreconditionFailed(InfalgError):
    """A construction was attempted on an instance that does not qualify.

    Carries a short machine-readable ``reason`` and, when available, a
    ``witness`` tuple pointing at the offending data.
    """

    def __init__(self, reason, witness=None):
        super().__init__(reason if witness is None else f"{reason}: {witness}")
        self.reason = reason
        self.witness = witness
