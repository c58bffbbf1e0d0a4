"""Codecs for JSON-compatible binary formats.

One document model (plain ``None``/``bool``/``int``/``float``/``str``/
``list``/``dict`` values), shared LEB128 and ZigZag primitives, bit-exact
MessagePack, CBOR, UBJSON, BSON and Smile codecs, schema-driven Avro binary
encoding and an Avro schema-compatibility classifier.
"""

from . import avro, bson, cbor, intcodec, messagepack, smile, ubjson
from .errors import (BadTag, CodecError, DuplicateKey, DuplicateKeyError,
                     InvalidUtf8, JsonSyntaxError, KeyContainsNul,
                     LengthMismatch, Malformed, Overflow, RangeError,
                     ResolutionError, SchemaMismatch, SchemaRequired,
                     SchemaSyntax, TopLevelShape, TrailingBytes, Truncated,
                     Unsupported)
from .formats import SCHEMA_LESS, FormatId, annotate, decode, encode
from .intcodec import (leb128_decode_signed_twos, leb128_decode_unsigned,
                       leb128_encode_signed_twos, leb128_encode_unsigned,
                       zigzag_decode, zigzag_encode)
from .value import (canon_eq, dump_json, kind, load_canonical_doc,
                    load_fixture, parse_json)

__version__ = "0.1.0"

__all__ = [
    "BadTag", "CodecError", "DuplicateKey", "DuplicateKeyError", "FormatId",
    "InvalidUtf8", "JsonSyntaxError", "KeyContainsNul", "LengthMismatch",
    "Malformed", "Overflow", "RangeError", "ResolutionError", "SCHEMA_LESS",
    "SchemaMismatch", "SchemaRequired", "SchemaSyntax", "TopLevelShape",
    "TrailingBytes", "Truncated", "Unsupported", "annotate", "avro", "bson",
    "canon_eq", "cbor", "decode", "dump_json", "encode", "intcodec", "kind",
    "leb128_decode_signed_twos", "leb128_decode_unsigned",
    "leb128_encode_signed_twos", "leb128_encode_unsigned",
    "load_canonical_doc", "load_fixture", "messagepack", "parse_json",
    "smile", "ubjson", "zigzag_decode", "zigzag_encode",
]
