"""Exception types shared by the value model and every codec."""


class RangeError(ValueError):
    """A number does not fit the integer width it is being forced into."""


class JsonSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class DuplicateKeyError(ValueError):
    def __init__(self, key):
        super().__init__(f"duplicate object key {key!r}")
        self.key = key


class CodecError(Exception):
    """Base class for encode/decode failures.

    ``kind`` names the failure category, ``offset`` is the byte position in
    the buffer being decoded (or produced) where the problem was detected.
    """

    kind = "CodecError"

    def __init__(self, detail="", offset=0):
        self.detail = detail
        self.offset = offset
        super().__init__(f"{self.kind} at offset {offset}: {detail}" if detail
                         else f"{self.kind} at offset {offset}")


class Truncated(CodecError):
    kind = "Truncated"


class BadTag(CodecError):
    kind = "BadTag"

    def __init__(self, tag, offset=0, detail=""):
        self.tag = tag
        super().__init__(detail or f"unexpected type byte 0x{tag:02x}", offset)


class Overflow(CodecError):
    kind = "Overflow"


class Unsupported(CodecError):
    kind = "Unsupported"


class TopLevelShape(CodecError):
    kind = "TopLevelShape"


class SchemaRequired(CodecError):
    kind = "SchemaRequired"


class InvalidUtf8(CodecError):
    kind = "InvalidUtf8"


class TrailingBytes(CodecError):
    kind = "TrailingBytes"


class LengthMismatch(CodecError):
    kind = "LengthMismatch"


class KeyContainsNul(CodecError):
    kind = "KeyContainsNul"


class DuplicateKey(CodecError):
    kind = "DuplicateKey"


class Malformed(CodecError):
    """Structurally invalid content that is not attributable to one tag."""

    kind = "Malformed"


class SchemaSyntax(CodecError):
    kind = "SchemaSyntax"

    def __init__(self, detail, path="$"):
        self.path = path
        super().__init__(f"{path}: {detail}", 0)
        self.detail = detail


class SchemaMismatch(CodecError):
    kind = "SchemaMismatch"

    def __init__(self, detail, path="$", offset=0):
        self.path = path
        super().__init__(f"{path}: {detail}", offset)
        self.detail = detail


class ResolutionError(CodecError):
    kind = "ResolutionError"

    def __init__(self, detail, path="$", offset=0):
        self.path = path
        super().__init__(f"{path}: {detail}", offset)
        self.detail = detail
