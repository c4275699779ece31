"""Exception hierarchy shared across the toolkit.

Every error raised on purpose derives from :class:`KpngError` so callers
(notably the CLI) can catch one base class.
"""


class KpngError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(KpngError):
    """An argument is outside its documented range (k, level, filter type)."""


class DimensionMismatchError(KpngError):
    """Two images that must share a shape do not."""


class FlateError(KpngError):
    """Base class for compressed-stream errors."""


class ZlibHeaderError(FlateError):
    """The 2-byte zlib header is malformed or requests an unsupported feature."""


class CorruptStreamError(FlateError):
    """The DEFLATE payload is not decodable (bad block type, bad Huffman data, ...)."""


class DistanceTooFarError(FlateError):
    """A back-reference points before the start of the output."""


class ChecksumMismatchError(FlateError):
    """The Adler-32 trailer does not match the decompressed payload."""


class TruncatedStreamError(FlateError):
    """The stream ended before decoding finished."""


class FormatError(KpngError):
    """Base class for image container errors."""


class PngFormatError(FormatError):
    """Structurally invalid PNG data."""


class PngCrcError(PngFormatError):
    """A chunk CRC does not match its contents."""


class BmpFormatError(FormatError):
    """Structurally invalid BMP data."""


class UnsupportedImageError(FormatError):
    """Well-formed file, but uses a feature outside the supported subset."""
