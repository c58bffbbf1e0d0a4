"""BSON encoder/decoder for the JSON-compatible subset.

Every document and array is a frame: int32 total length (little-endian,
counting itself and the trailing NUL), elements, ``0x00``. Arrays are
documents keyed ``"0"``, ``"1"``, ... and tagged ``0x04``.
"""

import struct

from .cursor import ByteCursor
from .errors import (BadTag, DuplicateKey, KeyContainsNul, LengthMismatch,
                     Malformed, TopLevelShape, TrailingBytes, Truncated,
                     Unsupported)
from .value import INT64_MAX, INT64_MIN, kind

_I32 = struct.Struct("<i")
_I64 = struct.Struct("<q")
_F64 = struct.Struct("<d")

DOUBLE, STRING, DOCUMENT, ARRAY = 0x01, 0x02, 0x03, 0x04
BOOL, NULL, INT32, INT64 = 0x08, 0x0A, 0x10, 0x12

# tags outside the JSON subset; decode reports them as Unsupported
_MONGO_TAGS = {
    0x05: "binary", 0x06: "undefined", 0x07: "ObjectId", 0x09: "UTC datetime",
    0x0B: "regex", 0x0C: "DBPointer", 0x0D: "JavaScript code", 0x0E: "symbol",
    0x0F: "code with scope", 0x11: "timestamp", 0x13: "decimal128",
    0xFF: "min key", 0x7F: "max key",
}
_TAG_NAMES = {DOUBLE: "double", STRING: "string", DOCUMENT: "document",
              ARRAY: "array", BOOL: "bool", NULL: "null", INT32: "int32",
              INT64: "int64"}


def _cstring(key, out):
    raw = key.encode("utf-8")
    if b"\x00" in raw:
        raise KeyContainsNul(f"key {key!r} contains a NUL byte", len(out))
    out += raw
    out.append(0)


def _element(key, value, out):
    k = kind(value)
    tag_at = len(out)
    out.append(0)
    _cstring(key, out)
    if k == "null":
        tag = NULL
    elif k == "bool":
        tag = BOOL
        out.append(1 if value else 0)
    elif k == "int":
        if -0x80000000 <= value <= 0x7FFFFFFF:
            tag = INT32
            out += _I32.pack(value)
        elif INT64_MIN <= value <= INT64_MAX:
            tag = INT64
            out += _I64.pack(value)
        else:
            raise Unsupported(f"{value} is outside the signed 64-bit range", tag_at)
    elif k == "float":
        tag = DOUBLE
        out += _F64.pack(value)
    elif k == "str":
        tag = STRING
        raw = value.encode("utf-8")
        out += _I32.pack(len(raw) + 1)
        out += raw
        out.append(0)
    elif k == "array":
        tag = ARRAY
        _frame(((str(i), item) for i, item in enumerate(value)), out)
    else:
        tag = DOCUMENT
        _frame(value.items(), out)
    out[tag_at] = tag


def _frame(entries, out):
    start = len(out)
    out += b"\x00\x00\x00\x00"
    for key, value in entries:
        _element(key, value, out)
    out.append(0)
    _I32.pack_into(out, start, len(out) - start)


def encode(doc):
    if kind(doc) != "object":
        raise TopLevelShape("a BSON document root must be an object", 0)
    out = bytearray()
    _frame(doc.items(), out)
    return bytes(out)


def _cstring_read(cur):
    start = cur.pos
    end = cur.data.find(b"\x00", start)
    if end < 0:
        raise Truncated("element name has no NUL terminator", len(cur.data))
    return cur.text(end - start), cur.byte()


def _read_frame(cur, as_array):
    start = cur.pos
    (length,) = cur.unpack(_I32)
    if length < 5:
        raise LengthMismatch(f"frame length {length} is below the 5-byte minimum", start)
    cur.note("array length" if as_array else "document length", str(length))
    entries = {}
    items = []
    while True:
        if cur.pos >= start + length:
            if start + length > len(cur.data):
                raise Truncated(f"frame claims {length} bytes, {len(cur.data) - start} available",
                                len(cur.data))
            raise LengthMismatch("frame ended without its 0x00 terminator", cur.pos)
        tag_at = cur.pos
        tag = cur.byte()
        if tag == 0:
            cur.note("end of frame", None)
            break
        name, _ = _cstring_read(cur)
        cur.note(f"{_TAG_NAMES.get(tag, 'tag')} element", repr(name))
        value = _read_value(cur, tag, tag_at)
        if as_array:
            if name != str(len(items)):
                raise Malformed(f"array key {name!r}, expected {str(len(items))!r}", tag_at)
            items.append(value)
        else:
            if name in entries:
                raise DuplicateKey(f"repeated key {name!r}", tag_at)
            entries[name] = value
    if cur.pos - start != length:
        if start + length > len(cur.data):
            raise Truncated(f"frame claims {length} bytes, {len(cur.data) - start} available",
                            len(cur.data))
        raise LengthMismatch(
            f"frame length prefix {length} but content spans {cur.pos - start} bytes", start)
    return items if as_array else entries


def _read_value(cur, tag, tag_at):
    if tag == DOUBLE:
        (x,) = cur.unpack(_F64)
        cur.note("double", repr(x))
        return x
    if tag == STRING:
        at = cur.pos
        (n,) = cur.unpack(_I32)
        if n < 1:
            raise LengthMismatch(f"string length {n} must count its NUL", at)
        cur.note("string length", str(n))
        s = cur.text(n - 1)
        if cur.byte() != 0:
            raise LengthMismatch("string is not NUL-terminated at its declared length", cur.pos - 1)
        cur.note("string payload", repr(s))
        return s
    if tag == DOCUMENT:
        return _read_frame(cur, False)
    if tag == ARRAY:
        return _read_frame(cur, True)
    if tag == BOOL:
        b = cur.byte()
        if b > 1:
            raise BadTag(b, cur.pos - 1, f"boolean byte 0x{b:02x} is not 0x00/0x01")
        cur.note("bool", "true" if b else "false")
        return bool(b)
    if tag == NULL:
        return None
    if tag == INT32:
        (n,) = cur.unpack(_I32)
        cur.note("int32", str(n))
        return n
    if tag == INT64:
        (n,) = cur.unpack(_I64)
        cur.note("int64", str(n))
        return n
    if tag in _MONGO_TAGS:
        raise Unsupported(f"{_MONGO_TAGS[tag]} values are outside the JSON subset", tag_at)
    raise BadTag(tag, tag_at)


def read(cur):
    return _read_frame(cur, False)


def decode(data):
    cur = ByteCursor(data)
    value = read(cur)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    return value
