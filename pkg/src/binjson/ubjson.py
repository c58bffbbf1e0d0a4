"""UBJSON encoder/decoder.

Markers are printable ASCII mnemonics. Integers use the narrowest of
``U`` (0..255), ``i``, ``I``, ``l``, ``L``; a one-byte string uses ``C``;
reals are written as float64 ``D``, except that zero uses float32 ``d``
and subnormals use the exact high-precision ``H`` form. Object keys are a length
integer followed by UTF-8 bytes, with no ``S`` marker. The optimized
``$``/``#`` container headers are not supported.
"""

import struct
from decimal import Decimal, InvalidOperation

from .cursor import F32, F64, ByteCursor, widen_float
from .errors import (BadTag, DuplicateKey, InvalidUtf8, Malformed, Overflow,
                     TrailingBytes, Unsupported)
from .value import INT64_MAX, INT64_MIN, kind

_INT_MARKERS = {
    ord("i"): ("int8", struct.Struct(">b")),
    ord("U"): ("uint8", struct.Struct(">B")),
    ord("I"): ("int16", struct.Struct(">h")),
    ord("l"): ("int32", struct.Struct(">i")),
    ord("L"): ("int64", struct.Struct(">q")),
}
_PACK = {chr(m): fmt for m, (_, fmt) in _INT_MARKERS.items()}

MARKERS = frozenset(b"ZNTFiUIlLdDHCS[]{}")

# matches the reference encoder's cut-off for float64 output
_DBL_MIN_NORMAL = 2.23e-308


def _encode_int(n, out):
    if not INT64_MIN <= n <= INT64_MAX:
        raise Overflow(f"{n} is outside the signed 64-bit range", len(out))
    if 0 <= n <= 0xFF:
        m = "U"
    elif -0x80 <= n < 0:
        m = "i"
    elif -0x8000 <= n <= 0x7FFF:
        m = "I"
    elif -0x80000000 <= n <= 0x7FFFFFFF:
        m = "l"
    else:
        m = "L"
    out += m.encode() + _PACK[m].pack(n)


def _encode(value, out):
    k = kind(value)
    if k == "null":
        out += b"Z"
    elif k == "bool":
        out += b"T" if value else b"F"
    elif k == "int":
        _encode_int(value, out)
    elif k == "float":
        if value == 0:
            # zero is exact in float32; the sign survives too
            out += b"d" + F32.pack(value)
        elif abs(value) < _DBL_MIN_NORMAL:
            # subnormals go out as their exact decimal expansion
            raw = str(Decimal(value)).encode("ascii")
            out += b"H"
            _encode_int(len(raw), out)
            out += raw
        else:
            out += b"D" + F64.pack(value)
    elif k == "str":
        raw = value.encode("utf-8")
        if len(raw) == 1:
            out += b"C" + raw
        else:
            out += b"S"
            _encode_int(len(raw), out)
            out += raw
    elif k == "array":
        out += b"["
        for item in value:
            _encode(item, out)
        out += b"]"
    else:
        out += b"{"
        for key, item in value.items():
            raw = key.encode("utf-8")
            _encode_int(len(raw), out)
            out += raw
            _encode(item, out)
        out += b"}"


def encode(doc):
    out = bytearray()
    _encode(doc, out)
    return bytes(out)


def _skip_noops(cur):
    while cur.peek() == ord("N"):
        cur.byte()
        cur.note("no-op", None)


def _read_length(cur):
    start = cur.pos
    m = cur.byte()
    if m not in _INT_MARKERS:
        raise BadTag(m, start, f"expected an integer length marker, got 0x{m:02x}")
    label, fmt = _INT_MARKERS[m]
    (n,) = cur.unpack(fmt)
    if n < 0:
        raise Malformed(f"negative length {n}", start)
    return n, label


def _read_sized_text(cur, what):
    n, label = _read_length(cur)
    cur.note(f"{what} length ({label})", str(n))
    s = cur.text(n)
    cur.note("utf-8 payload", repr(s))
    return s


def _high_precision(cur, start):
    s = _read_sized_text(cur, "high-precision")
    try:
        d = Decimal(s)
    except InvalidOperation:
        raise Malformed(f"{s!r} is not a number", start) from None
    if not d.is_finite():
        raise Overflow(f"{s!r} is not finite", start)
    if d == d.to_integral_value() and "." not in s and "e" not in s.lower():
        n = int(d)
        if INT64_MIN <= n <= INT64_MAX:
            return n
    x = float(d)
    if Decimal(x) != d:
        raise Overflow(f"{s!r} is not exactly representable as binary64", start)
    return x


def read(cur):
    _skip_noops(cur)
    start = cur.pos
    m = cur.byte()
    if m == ord("Z"):
        cur.note("null (Z)", "null")
        return None
    if m == ord("T") or m == ord("F"):
        cur.note(f"bool ({chr(m)})", "true" if m == ord("T") else "false")
        return m == ord("T")
    if m in _INT_MARKERS:
        label, fmt = _INT_MARKERS[m]
        (n,) = cur.unpack(fmt)
        cur.note(f"{label} ({chr(m)})", str(n))
        return n
    if m == ord("d"):
        (x,) = cur.unpack(F32)
        x = widen_float(x, F32)
        cur.note("float32 (d)", repr(x))
        return x
    if m == ord("D"):
        (x,) = cur.unpack(F64)
        cur.note("float64 (D)", repr(x))
        return x
    if m == ord("H"):
        cur.note("high-precision (H)", None)
        return _high_precision(cur, start)
    if m == ord("C"):
        c = cur.byte()
        if c > 0x7F:
            raise InvalidUtf8("char must be ASCII", start + 1)
        cur.note("char (C)", repr(chr(c)))
        return chr(c)
    if m == ord("S"):
        cur.note("string (S)", None)
        return _read_sized_text(cur, "string")
    if m == ord("["):
        if cur.peek() in (ord("$"), ord("#")):
            raise Unsupported("optimized container headers", cur.pos)
        cur.note("array start ([)", None)
        items = []
        while True:
            _skip_noops(cur)
            if cur.peek() == ord("]"):
                cur.byte()
                cur.note("array end (])", f"{len(items)} items")
                return items
            items.append(read(cur))
    if m == ord("{"):
        if cur.peek() in (ord("$"), ord("#")):
            raise Unsupported("optimized container headers", cur.pos)
        cur.note("object start ({)", None)
        obj = {}
        while True:
            _skip_noops(cur)
            if cur.peek() == ord("}"):
                cur.byte()
                cur.note("object end (})", f"{len(obj)} entries")
                return obj
            key_at = cur.pos
            key = _read_sized_text(cur, "key")
            if key in obj:
                raise DuplicateKey(f"repeated key {key!r}", key_at)
            obj[key] = read(cur)
    raise BadTag(m, start)


def decode(data):
    cur = ByteCursor(data)
    value = read(cur)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    return value
