"""Exception types raised across the library.

Every error inherits from :class:`SpecinvError`; most also inherit a
matching builtin (``ValueError``/``RuntimeError``) so callers that only
know the standard hierarchy still catch them.
"""

__all__ = [
    "SpecinvError",
    "InvalidConfigError",
    "InvalidInputError",
    "UnsupportedKindError",
    "FormatError",
    "UnsupportedCodecError",
    "MeasurementError",
]


class SpecinvError(Exception):
    """Base class for all library errors."""


class InvalidConfigError(SpecinvError, ValueError):
    """A parameter object (window, frame config, clip mode, ...) is malformed."""


class InvalidInputError(SpecinvError, ValueError):
    """Input data violates an operation's precondition."""


class UnsupportedKindError(SpecinvError, ValueError):
    """The requested operation is undefined for this spectrogram kind."""


class FormatError(SpecinvError, ValueError):
    """A file does not conform to the expected on-disk layout."""


class UnsupportedCodecError(FormatError):
    """A WAV file uses an encoding this library does not read."""


class MeasurementError(SpecinvError, RuntimeError):
    """A benchmark produced unusable timing data (e.g. zero elapsed time)."""
