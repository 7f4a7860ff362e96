"""Exception types shared across the toolkit.

Every failure mode the command-line harness maps to an exit code has its
own class here, so callers can tell apart "your directories don't pair up"
from "this PNG is broken" without string matching.
"""


class SrkitError(Exception):
    """Base class for all toolkit errors."""


class ImageFormatError(SrkitError):
    """Input file decodes but is not an accepted 8-bit RGB-ish PNG."""


class ImageDecodeError(SrkitError):
    """Input file is missing a PNG signature or the stream is corrupt."""


class DimensionMismatchError(SrkitError):
    """Two images (or an image and a contract) disagree on dimensions."""


class PairingError(SrkitError):
    """Directory evaluation could not pair SR and HR files by stem."""


class ConfigError(SrkitError):
    """A declarative config or spec file failed to parse or validate."""
