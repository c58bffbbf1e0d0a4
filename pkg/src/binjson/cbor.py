"""CBOR encoder/decoder.

Output uses definite lengths, minimal-width arguments and binary64 floats.
The decoder also accepts indefinite-length strings, arrays and maps and
half/single precision floats. Semantic tags are skipped with a
:class:`CborTagWarning`; bignums and decimal fractions are rejected.
"""

import math
import struct
import warnings

from .cursor import F16, F32, F64, ByteCursor, widen_float
from .errors import (BadTag, DuplicateKey, Overflow, TrailingBytes,
                     Unsupported)
from .value import INT64_MAX, INT64_MIN, kind

_ARG = {24: struct.Struct(">B"), 25: struct.Struct(">H"),
        26: struct.Struct(">I"), 27: struct.Struct(">Q")}

UNSIGNED, NEGATIVE, BYTES, TEXT, ARRAY, MAP, TAG, SIMPLE = range(8)
BREAK = 0xFF

_MAJOR_NAMES = ["uint", "negint", "bytes", "text", "array", "map", "tag",
                "simple"]


class CborTagWarning(UserWarning):
    """A semantic tag was dropped while decoding."""


def header_encode(major, argument):
    """Initial byte(s) for ``major`` with the narrowest argument encoding."""
    if not 0 <= major <= 7:
        raise ValueError(f"major type {major} is not 0-7")
    if argument < 0 or argument >> 64:
        raise ValueError(f"argument {argument} is not an unsigned 64-bit integer")
    top = major << 5
    if argument < 24:
        return bytes([top | argument])
    for ai, fmt in _ARG.items():
        if argument < 1 << (8 * fmt.size):
            return bytes([top | ai]) + fmt.pack(argument)
    raise AssertionError("unreachable")


def _encode(value, out):
    k = kind(value)
    if k == "null":
        out.append(0xF6)
    elif k == "bool":
        out.append(0xF5 if value else 0xF4)
    elif k == "int":
        if not INT64_MIN <= value <= INT64_MAX:
            raise Overflow(f"{value} is outside the signed 64-bit range", len(out))
        if value >= 0:
            out += header_encode(UNSIGNED, value)
        else:
            out += header_encode(NEGATIVE, -1 - value)
    elif k == "float":
        out += b"\xfb" + F64.pack(value)
    elif k == "str":
        raw = value.encode("utf-8")
        out += header_encode(TEXT, len(raw))
        out += raw
    elif k == "array":
        out += header_encode(ARRAY, len(value))
        for item in value:
            _encode(item, out)
    else:
        out += header_encode(MAP, len(value))
        for key, item in value.items():
            raw = key.encode("utf-8")
            out += header_encode(TEXT, len(raw))
            out += raw
            _encode(item, out)


def encode(doc):
    out = bytearray()
    _encode(doc, out)
    return bytes(out)


def _head(cur):
    """Read an initial byte and its argument; ``None`` argument means indefinite."""
    start = cur.pos
    ib = cur.byte()
    major, ai = ib >> 5, ib & 0x1F
    if ai < 24:
        return start, ib, major, ai
    if ai in _ARG:
        if major == SIMPLE:
            return start, ib, major, ai
        (arg,) = cur.unpack(_ARG[ai])
        return start, ib, major, arg
    if ai == 31 and major in (BYTES, TEXT, ARRAY, MAP):
        return start, ib, major, None
    raise BadTag(ib, start)


def _read_text(cur, n, label):
    cur.note(label, f"length {n}")
    s = cur.text(n)
    cur.note("utf-8 payload", repr(s))
    return s


def _read_string(cur, start, ib, arg):
    if arg is not None:
        return _read_text(cur, arg, "text header")
    cur.note("indefinite text", "chunks until 0xff")
    parts = []
    while cur.peek() != BREAK:
        c_start, c_ib, c_major, c_arg = _head(cur)
        if c_major != TEXT or c_arg is None:
            raise BadTag(c_ib, c_start, "indefinite text chunk must be definite text")
        parts.append(_read_text(cur, c_arg, "text chunk header"))
    cur.byte()
    cur.note("break", None)
    return "".join(parts)


def _read_key(cur):
    start, ib, major, arg = _head(cur)
    if major != TEXT:
        raise Unsupported("map keys must be text strings", start)
    return _read_string(cur, start, ib, arg)


def _simple(cur, start, ib, ai):
    if ai == 20 or ai == 21:
        cur.note("simple", "true" if ai == 21 else "false")
        return ai == 21
    if ai == 22:
        cur.note("simple", "null")
        return None
    if ai in (25, 26, 27):
        fmt = {25: F16, 26: F32, 27: F64}[ai]
        (x,) = cur.unpack(fmt)
        if not math.isfinite(x):
            raise Unsupported("NaN and infinities are not JSON values", start)
        if fmt is not F64:
            x = widen_float(x, fmt)
        cur.note(f"float{8 * fmt.size}", repr(x))
        return x
    if ai == 31:
        raise BadTag(ib, start, "break outside an indefinite-length item")
    raise Unsupported(f"simple value {ai} has no JSON equivalent", start)


def read(cur):
    start, ib, major, arg = _head(cur)
    if major == UNSIGNED:
        if arg > INT64_MAX:
            raise Overflow(f"unsigned {arg} exceeds signed 64 bits", start)
        cur.note("uint", str(arg))
        return arg
    if major == NEGATIVE:
        n = -1 - arg
        if n < INT64_MIN:
            raise Overflow(f"negative {n} below signed 64 bits", start)
        cur.note("negint", str(n))
        return n
    if major == TEXT:
        return _read_string(cur, start, ib, arg)
    if major == ARRAY:
        if arg is not None:
            cur.note("array", f"{arg} items")
            return [read(cur) for _ in range(arg)]
        cur.note("indefinite array", "items until 0xff")
        items = []
        while cur.peek() != BREAK:
            items.append(read(cur))
        cur.byte()
        cur.note("break", None)
        return items
    if major == MAP:
        obj = {}

        def entry():
            key_at = cur.pos
            key = _read_key(cur)
            if key in obj:
                raise DuplicateKey(f"repeated key {key!r}", key_at)
            obj[key] = read(cur)

        if arg is not None:
            cur.note("map", f"{arg} entries")
            for _ in range(arg):
                entry()
        else:
            cur.note("indefinite map", "entries until 0xff")
            while cur.peek() != BREAK:
                entry()
            cur.byte()
            cur.note("break", None)
        return obj
    if major == TAG:
        if arg in (2, 3, 4, 5):
            raise Unsupported(f"tag {arg} (bignum/decimal) is outside the document model", start)
        cur.note("tag", str(arg))
        warnings.warn(CborTagWarning(f"dropped semantic tag {arg} at offset {start}"),
                      stacklevel=2)
        return read(cur)
    if major == SIMPLE:
        return _simple(cur, start, ib, arg)
    raise Unsupported("byte strings are not JSON content", start)


def decode(data):
    cur = ByteCursor(data)
    value = read(cur)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    return value
