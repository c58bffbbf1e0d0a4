"""MessagePack encoder/decoder.

The encoder always picks the narrowest integer and length encodings; floats
are written as float64. Extension and bin types are not JSON content and are
rejected on decode.
"""

import struct

from .cursor import F32, F64, ByteCursor, widen_float
from .errors import (BadTag, DuplicateKey, Overflow, TrailingBytes,
                     Unsupported)
from .value import INT64_MAX, INT64_MIN, kind

_U8 = struct.Struct(">B")
_U16 = struct.Struct(">H")
_U32 = struct.Struct(">I")
_U64 = struct.Struct(">Q")
_I8 = struct.Struct(">b")
_I16 = struct.Struct(">h")
_I32 = struct.Struct(">i")
_I64 = struct.Struct(">q")


def _encode_int(n, out):
    if not INT64_MIN <= n <= INT64_MAX:
        raise Overflow(f"{n} is outside the signed 64-bit range", len(out))
    if 0 <= n <= 0x7F:
        out.append(n)
    elif -32 <= n < 0:
        out.append(0xE0 | (n & 0x1F))
    elif n > 0:
        if n <= 0xFF:
            out += b"\xcc" + _U8.pack(n)
        elif n <= 0xFFFF:
            out += b"\xcd" + _U16.pack(n)
        elif n <= 0xFFFFFFFF:
            out += b"\xce" + _U32.pack(n)
        else:
            out += b"\xcf" + _U64.pack(n)
    elif n >= -0x80:
        out += b"\xd0" + _I8.pack(n)
    elif n >= -0x8000:
        out += b"\xd1" + _I16.pack(n)
    elif n >= -0x80000000:
        out += b"\xd2" + _I32.pack(n)
    else:
        out += b"\xd3" + _I64.pack(n)


def _encode_str(s, out):
    raw = s.encode("utf-8")
    n = len(raw)
    if n < 32:
        out.append(0xA0 | n)
    elif n <= 0xFF:
        out += b"\xd9" + _U8.pack(n)
    elif n <= 0xFFFF:
        out += b"\xda" + _U16.pack(n)
    else:
        out += b"\xdb" + _U32.pack(n)
    out += raw


def _encode_header(n, fix, fix_max, tag16, out):
    if n <= fix_max:
        out.append(fix | n)
    elif n <= 0xFFFF:
        out += bytes([tag16]) + _U16.pack(n)
    else:
        out += bytes([tag16 + 1]) + _U32.pack(n)


def _encode(value, out):
    k = kind(value)
    if k == "null":
        out.append(0xC0)
    elif k == "bool":
        out.append(0xC3 if value else 0xC2)
    elif k == "int":
        _encode_int(value, out)
    elif k == "float":
        out += b"\xcb" + F64.pack(value)
    elif k == "str":
        _encode_str(value, out)
    elif k == "array":
        _encode_header(len(value), 0x90, 15, 0xDC, out)
        for item in value:
            _encode(item, out)
    else:
        _encode_header(len(value), 0x80, 15, 0xDE, out)
        for key, item in value.items():
            _encode_str(key, out)
            _encode(item, out)


def encode(doc):
    out = bytearray()
    _encode(doc, out)
    return bytes(out)


# tag -> (label, struct) for fixed-width scalars
_INTS = {
    0xCC: ("uint8", _U8), 0xCD: ("uint16", _U16), 0xCE: ("uint32", _U32),
    0xCF: ("uint64", _U64), 0xD0: ("int8", _I8), 0xD1: ("int16", _I16),
    0xD2: ("int32", _I32), 0xD3: ("int64", _I64),
}
_STR_LEN = {0xD9: ("str8", _U8), 0xDA: ("str16", _U16), 0xDB: ("str32", _U32)}
_ARR_LEN = {0xDC: ("array16", _U16), 0xDD: ("array32", _U32)}
_MAP_LEN = {0xDE: ("map16", _U16), 0xDF: ("map32", _U32)}
_EXT = {0xC7, 0xC8, 0xC9, 0xD4, 0xD5, 0xD6, 0xD7, 0xD8}


def _read_str(cur, n, label):
    cur.note(f"{label} header", f"length {n}")
    s = cur.text(n)
    cur.note("utf-8 payload", repr(s))
    return s


def _read_key(cur):
    start = cur.pos
    tag = cur.byte()
    if 0xA0 <= tag <= 0xBF:
        return _read_str(cur, tag & 0x1F, "fixstr key")
    if tag in _STR_LEN:
        label, fmt = _STR_LEN[tag]
        (n,) = cur.unpack(fmt)
        return _read_str(cur, n, f"{label} key")
    raise Unsupported("map keys must be strings", start)


def read(cur):
    """Decode one value at the cursor."""
    start = cur.pos
    tag = cur.byte()
    if tag <= 0x7F:
        cur.note("positive fixint", str(tag))
        return tag
    if tag >= 0xE0:
        n = tag - 0x100
        cur.note("negative fixint", str(n))
        return n
    if tag == 0xC0:
        cur.note("nil", "null")
        return None
    if tag in (0xC2, 0xC3):
        cur.note("bool", "true" if tag == 0xC3 else "false")
        return tag == 0xC3
    if tag in _INTS:
        label, fmt = _INTS[tag]
        (n,) = cur.unpack(fmt)
        if n > INT64_MAX:
            raise Overflow(f"{label} value {n} exceeds signed 64 bits", start)
        cur.note(label, str(n))
        return n
    if tag == 0xCA:
        (x,) = cur.unpack(F32)
        x = widen_float(x, F32)
        cur.note("float32", repr(x))
        return x
    if tag == 0xCB:
        (x,) = cur.unpack(F64)
        cur.note("float64", repr(x))
        return x
    if 0xA0 <= tag <= 0xBF:
        return _read_str(cur, tag & 0x1F, "fixstr")
    if tag in _STR_LEN:
        label, fmt = _STR_LEN[tag]
        (n,) = cur.unpack(fmt)
        return _read_str(cur, n, label)
    if 0x90 <= tag <= 0x9F or tag in _ARR_LEN:
        if tag in _ARR_LEN:
            label, fmt = _ARR_LEN[tag]
            (n,) = cur.unpack(fmt)
        else:
            label, n = "fixarray", tag & 0x0F
        cur.note(label, f"{n} items")
        return [read(cur) for _ in range(n)]
    if 0x80 <= tag <= 0x8F or tag in _MAP_LEN:
        if tag in _MAP_LEN:
            label, fmt = _MAP_LEN[tag]
            (n,) = cur.unpack(fmt)
        else:
            label, n = "fixmap", tag & 0x0F
        cur.note(label, f"{n} entries")
        obj = {}
        for _ in range(n):
            key_at = cur.pos
            key = _read_key(cur)
            if key in obj:
                raise DuplicateKey(f"repeated key {key!r}", key_at)
            obj[key] = read(cur)
        return obj
    if tag in (0xC4, 0xC5, 0xC6):
        raise Unsupported("bin types are not JSON content", start)
    if tag in _EXT:
        raise BadTag(tag, start, "extension types are not supported")
    raise BadTag(tag, start)


def decode(data):
    cur = ByteCursor(data)
    value = read(cur)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    return value
