"""Exception types shared across the package."""


class SpinGameError(Exception):
    """Base class for all package-specific errors."""


class InvalidDirectionError(SpinGameError, ValueError):
    """A direction vector is not normalized."""


class ContractViolationError(SpinGameError, ValueError):
    """An operator or value failed a contract check (e.g. non-Hermitian
    observable, imaginary residue in an expectation value)."""


class ZeroSupportError(SpinGameError, ValueError):
    """A reference-basis label has (numerically) zero overlap with the
    prepared state, so no spin value can be assigned there."""


class InferenceError(SpinGameError, ValueError):
    """No menu direction reproduces the received spin value."""


class AmbiguousInferenceError(InferenceError):
    """More than one menu direction reproduces the received spin value."""

    def __init__(self, message, candidates):
        super().__init__(message)
        self.candidates = tuple(candidates)


class MenuAmbiguityError(SpinGameError, ValueError):
    """A direction menu fails the pre-game distinguishability check."""

    def __init__(self, message, collisions):
        super().__init__(message)
        self.collisions = tuple(collisions)


class ProtocolViolationError(SpinGameError, RuntimeError):
    """A player broke the game protocol (e.g. measured the same particle
    twice in one round)."""


class InsufficientDataError(SpinGameError, ValueError):
    """A transcript lacks rounds for a menu pair with nonzero weight."""


class SupportTooLargeError(SpinGameError, ValueError):
    """The hidden-variable support exceeds the configured search cap."""


class ConfigError(SpinGameError, ValueError):
    """A run specification could not be parsed or resolved."""
