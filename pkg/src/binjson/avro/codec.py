"""Avro binary encoding without object-container framing.

Integers are ZigZag varints (32-bit for ``int``, enum positions and union
indices are written the same way), strings and bytes carry a varint byte
length, arrays and maps are one block of all items followed by a zero
count. ``bytes`` and ``fixed`` values travel in the document model as
strings whose code points are the byte values.
"""

import math
import struct

from ..cursor import ByteCursor, widen_float
from ..errors import (BadTag, Malformed, RangeError, ResolutionError,
                      SchemaMismatch, TrailingBytes, Unsupported)
from ..intcodec import decode_zigzag_varint, encode_zigzag_varint
from ..value import kind
from .schema import Named, conforms, default_value

_F32 = struct.Struct("<f")
_F64 = struct.Struct("<d")
_INT32_MIN, _INT32_MAX = -(1 << 31), (1 << 31) - 1


def _select_branch(value, union):
    """Index of the first branch ``value`` conforms to; ints may widen to float."""
    for i, b in enumerate(union.branches):
        if conforms(value, b):
            return i
    if kind(value) == "int":
        for i, b in enumerate(union.branches):
            if b.type in ("float", "double"):
                return i
    return None


def _encode(value, schema, out, path):
    t = schema.type
    k = kind(value)

    def mismatch():
        return SchemaMismatch(f"{k} value does not match {t}", path, len(out))

    if t == "null":
        if k != "null":
            raise mismatch()
    elif t == "boolean":
        if k != "bool":
            raise mismatch()
        out.append(1 if value else 0)
    elif t == "int" or t == "long":
        if k != "int":
            raise mismatch()
        width = 32 if t == "int" else 64
        try:
            out += encode_zigzag_varint(value, width)
        except RangeError:
            raise RangeError(f"{path}: {value} does not fit Avro {t}") from None
    elif t == "float" or t == "double":
        if k not in ("float", "int"):
            raise mismatch()
        try:
            out += (_F32 if t == "float" else _F64).pack(float(value))
        except OverflowError:
            raise SchemaMismatch(f"{value!r} overflows {t}", path, len(out)) from None
    elif t == "string":
        if k != "str":
            raise mismatch()
        raw = value.encode("utf-8")
        out += encode_zigzag_varint(len(raw))
        out += raw
    elif t == "bytes" or t == "fixed":
        if k != "str":
            raise mismatch()
        try:
            raw = value.encode("latin-1")
        except UnicodeEncodeError:
            raise SchemaMismatch("bytes values are strings of code points below 256",
                                 path, len(out)) from None
        if t == "fixed":
            if len(raw) != schema.size:
                raise SchemaMismatch(f"fixed {schema.fullname} needs {schema.size} bytes, "
                                     f"got {len(raw)}", path, len(out))
        else:
            out += encode_zigzag_varint(len(raw))
        out += raw
    elif t == "enum":
        if k != "str" or value not in schema.symbols:
            raise SchemaMismatch(f"{value!r} is not a symbol of {schema.fullname}", path, len(out))
        out += encode_zigzag_varint(schema.symbols.index(value), 32)
    elif t == "array":
        if k != "array":
            raise mismatch()
        if value:
            out += encode_zigzag_varint(len(value))
            for i, item in enumerate(value):
                _encode(item, schema.items, out, f"{path}[{i}]")
        out.append(0)
    elif t == "map":
        if k != "object":
            raise mismatch()
        if value:
            out += encode_zigzag_varint(len(value))
            for key, item in value.items():
                raw = key.encode("utf-8")
                out += encode_zigzag_varint(len(raw))
                out += raw
                _encode(item, schema.values, out, f"{path}.{key}")
        out.append(0)
    elif t == "record":
        if k != "object":
            raise mismatch()
        for key in value:
            if schema.field(key) is None:
                raise SchemaMismatch(f"{schema.fullname} has no field {key!r}", path, len(out))
        for f in schema.fields:
            fpath = f"{path}.{f.name}"
            if f.name in value:
                _encode(value[f.name], f.type, out, fpath)
            elif f.has_default:
                _encode(default_value(f.type, f.default), f.type, out, fpath)
            else:
                raise SchemaMismatch("required field is missing", fpath, len(out))
    else:
        i = _select_branch(value, schema)
        if i is None:
            raise SchemaMismatch(f"{k} value matches no union branch", path, len(out))
        out += encode_zigzag_varint(i, 32)
        _encode(value, schema.branches[i], out, path)


def encode(value, schema):
    """Encode ``value`` under ``schema``; fields equal to their defaults are still written."""
    out = bytearray()
    _encode(value, schema, out, "$")
    return bytes(out)


def _long(cur, width=64):
    value, used = decode_zigzag_varint(cur.data, width, cur.pos)
    cur.pos += used
    return value


def _length(cur, what):
    at = cur.pos
    n = _long(cur)
    if n < 0:
        raise Malformed(f"negative {what} {n}", at)
    return n


def _blocks(cur, label, read_item):
    """Run ``read_item`` for every entry of a block-encoded array or map."""
    count = 0
    while True:
        at = cur.pos
        n = _long(cur)
        if n == 0:
            cur.note(f"{label} end", f"{count} entries")
            return
        if n < 0:
            n = -n
            size = _length(cur, "block byte size")
            cur.note(f"{label} block count + byte size", f"{n} entries, {size} bytes")
        else:
            cur.note(f"{label} block count", f"{n} entries")
        if n > cur.remaining:
            raise Malformed(f"block of {n} entries exceeds the buffer", at)
        for _ in range(n):
            read_item()
            count += 1


def _read(cur, schema, path):
    t = schema.type
    start = cur.pos
    if t == "null":
        return None
    if t == "boolean":
        b = cur.byte()
        if b > 1:
            raise BadTag(b, start, "boolean byte must be 0x00 or 0x01")
        cur.note("boolean", "true" if b else "false")
        return b == 1
    if t == "int" or t == "long":
        n = _long(cur, 32 if t == "int" else 64)
        cur.note(f"{t} zigzag varint", str(n))
        return n
    if t == "float" or t == "double":
        (x,) = cur.unpack(_F32 if t == "float" else _F64)
        if not math.isfinite(x):
            raise Unsupported("NaN and infinities are not JSON values", start)
        if t == "float":
            x = widen_float(x, _F32)
        cur.note(t, repr(x))
        return x
    if t == "string":
        n = _length(cur, "string length")
        cur.note("string length", str(n))
        s = cur.text(n)
        cur.note("utf-8 payload", repr(s))
        return s
    if t == "bytes":
        n = _length(cur, "bytes length")
        cur.note("bytes length", str(n))
        s = cur.read(n).decode("latin-1")
        cur.note("bytes payload", repr(s))
        return s
    if t == "fixed":
        s = cur.read(schema.size).decode("latin-1")
        cur.note(f"fixed {schema.fullname}", repr(s))
        return s
    if t == "enum":
        i = _long(cur, 32)
        if not 0 <= i < len(schema.symbols):
            raise SchemaMismatch(f"enum index {i} out of range", path, start)
        cur.note(f"enum {schema.fullname}", schema.symbols[i])
        return schema.symbols[i]
    if t == "array":
        items = []
        _blocks(cur, "array", lambda: items.append(
            _read(cur, schema.items, f"{path}[{len(items)}]")))
        return items
    if t == "map":
        obj = {}

        def entry():
            n = _length(cur, "key length")
            cur.note("map key length", str(n))
            key = cur.text(n)
            cur.note("map key", repr(key))
            obj[key] = _read(cur, schema.values, f"{path}.{key}")

        _blocks(cur, "map", entry)
        return obj
    if t == "record":
        return {f.name: _read(cur, f.type, f"{path}.{f.name}") for f in schema.fields}
    i = _long(cur, 32)
    if not 0 <= i < len(schema.branches):
        raise SchemaMismatch(f"union index {i} out of range", path, start)
    branch = schema.branches[i]
    cur.note("union branch index", f"{i} ({branch.type})")
    return _read(cur, branch, path)


def _names_match(w, r):
    return w.name == r.name or w.name in r.aliases or w.fullname in r.aliases


def _promote(value, w, r):
    if w.type == r.type or r.type == "long":
        return value
    if r.type == "float":
        return widen_float(_F32.unpack(_F32.pack(float(value)))[0], _F32)
    return float(value)


_PROMOTIONS = {("int", "long"), ("int", "float"), ("int", "double"),
               ("long", "float"), ("long", "double"), ("float", "double")}


def shallow_match(w, r):
    """Whether a reader branch ``r`` can take a writer value of type ``w`` at all."""
    if w.type == r.type:
        if isinstance(w, Named):
            if not _names_match(w, r):
                return False
            return w.type != "fixed" or w.size == r.size
        return True
    return (w.type, r.type) in _PROMOTIONS


def _read_resolved(cur, w, r, path):
    start = cur.pos
    if w.type == "union":
        i = _long(cur, 32)
        if not 0 <= i < len(w.branches):
            raise SchemaMismatch(f"union index {i} out of range", path, start)
        cur.note("union branch index", f"{i} ({w.branches[i].type})")
        return _read_resolved(cur, w.branches[i], r, path)
    if r.type == "union":
        for b in r.branches:
            if shallow_match(w, b):
                return _read_resolved(cur, w, b, path)
        raise ResolutionError(f"no reader branch accepts writer {w.type}", path, start)
    if not shallow_match(w, r):
        raise ResolutionError(f"writer {w.type} cannot be read as {r.type}", path, start)
    t = w.type
    if t == "record":
        got = {}
        for f in w.fields:
            rf = _reader_field(r, f)
            fpath = f"{path}.{f.name}"
            if rf is None:
                _read(cur, f.type, fpath)
            else:
                got[rf.name] = _read_resolved(cur, f.type, rf.type, fpath)
        out = {}
        for rf in r.fields:
            if rf.name in got:
                out[rf.name] = got[rf.name]
            elif rf.has_default:
                out[rf.name] = default_value(rf.type, rf.default)
            else:
                raise ResolutionError("reader field has no writer value and no default",
                                      f"{path}.{rf.name}", cur.pos)
        return out
    if t == "enum":
        symbol = _read(cur, w, path)
        if symbol in r.symbols:
            return symbol
        if r.default is not None:
            return r.default
        raise ResolutionError(f"symbol {symbol!r} is unknown to the reader", path, start)
    if t == "array":
        items = []
        _blocks(cur, "array", lambda: items.append(
            _read_resolved(cur, w.items, r.items, f"{path}[{len(items)}]")))
        return items
    if t == "map":
        obj = {}

        def entry():
            n = _length(cur, "key length")
            cur.note("map key length", str(n))
            key = cur.text(n)
            cur.note("map key", repr(key))
            obj[key] = _read_resolved(cur, w.values, r.values, f"{path}.{key}")

        _blocks(cur, "map", entry)
        return obj
    return _promote(_read(cur, w, path), w, r)


def _reader_field(r, wf):
    for rf in r.fields:
        if rf.name == wf.name or wf.name in rf.aliases:
            return rf
    return None


def read(cur, writer, reader=None):
    if reader is None:
        return _read(cur, writer, "$")
    return _read_resolved(cur, writer, reader, "$")


def decode(data, writer, reader=None):
    """Decode one value written under ``writer``, optionally resolved to ``reader``."""
    cur = ByteCursor(data)
    value = read(cur, writer, reader)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the value", cur.pos)
    return value
