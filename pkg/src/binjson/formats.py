"""Format registry: one entry per wire format, with uniform encode/decode.

>>> from binjson.formats import FormatId, encode
>>> encode(FormatId.MESSAGEPACK, None).hex()
'c0'
"""

import enum

from . import avro, bson, cbor, messagepack, smile, ubjson
from .cursor import ByteCursor
from .errors import CodecError, SchemaRequired, TopLevelShape, TrailingBytes
from .value import kind


class FormatId(enum.Enum):
    MESSAGEPACK = ("msgpack", "MessagePack", ".mp")
    CBOR = ("cbor", "CBOR", ".cbor")
    UBJSON = ("ubjson", "UBJSON", ".ubj")
    BSON = ("bson", "BSON", ".bson")
    SMILE = ("smile", "Smile", ".smile")
    AVRO = ("avro", "Avro", ".avro")

    def __init__(self, key, title, extension):
        self.key = key
        self.title = title
        self.extension = extension

    @property
    def schema_driven(self):
        return self is FormatId.AVRO

    def __str__(self):
        return self.title

    @classmethod
    def parse(cls, text):
        """Look a format up by CLI key, title or extension, case-insensitively."""
        t = text.lower().lstrip(".")
        for f in cls:
            if t in (f.key, f.title.lower(), f.extension[1:]):
                return f
        if t in ("messagepack", "mpk"):
            return cls.MESSAGEPACK
        if t == "ubj":
            return cls.UBJSON
        raise ValueError(f"unknown format {text!r}")

    @classmethod
    def from_extension(cls, path):
        path = str(path).lower()
        for f in cls:
            if path.endswith(f.extension):
                return f
        return None


SCHEMA_LESS = tuple(f for f in FormatId if not f.schema_driven)

_MODULES = {
    FormatId.MESSAGEPACK: messagepack,
    FormatId.CBOR: cbor,
    FormatId.UBJSON: ubjson,
    FormatId.BSON: bson,
    FormatId.SMILE: smile,
}


def _schema(schema):
    if schema is None:
        raise SchemaRequired("Avro needs a schema", 0)
    if isinstance(schema, avro.AvroSchema):
        return schema
    return avro.parse_schema(schema)


def encode(fmt, doc, schema=None, smile_options=None):
    """Encode ``doc``; Avro needs ``schema``, Smile takes an optional :class:`smile.SmileOptions`."""
    fmt = FormatId(fmt) if not isinstance(fmt, FormatId) else fmt
    if fmt is FormatId.AVRO:
        schema = _schema(schema)
        if schema.type == "record" and kind(doc) != "object":
            raise TopLevelShape("an Avro record schema needs an object root", 0)
        return avro.encode(doc, schema)
    if fmt is FormatId.SMILE:
        return smile.encode(doc, smile_options)
    return _MODULES[fmt].encode(doc)


def _reader(fmt, cur, schema, reader):
    if fmt is FormatId.AVRO:
        return avro.read(cur, _schema(schema), None if reader is None else _schema(reader))
    return _MODULES[fmt].read(cur)


def decode(fmt, data, schema=None, reader=None):
    """Decode one document filling the whole buffer."""
    cur = ByteCursor(data)
    value = _reader(fmt, cur, schema, reader)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    return value


def annotate(fmt, data, schema=None):
    """Decode with span tracing.

    Returns ``(value, spans, error)``; on failure ``value`` is None and
    ``spans`` holds everything labeled before the error.
    """
    cur = ByteCursor(data, trace=True)
    try:
        value = _reader(fmt, cur, schema, None)
        if not cur.at_end():
            raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    except CodecError as exc:
        return None, cur.spans, exc
    return value, cur.spans, None
