"""Exception types shared across the package."""


class NesieveError(Exception):
    """Base class for package-specific failures."""


class ResourceLimitError(NesieveError):
    """An operation would exceed a configured memory, size, or width budget."""


class NoCharacterError(NesieveError):
    """No character of the requested order exists for the given modulus."""


class UnsupportedEngineError(NesieveError):
    """The requested evaluation engine does not apply to these parameters."""


class CheckpointError(NesieveError):
    """A checkpoint file does not belong to the requested run."""
