"""Smile encoder/decoder.

A Smile stream is the header ``3a 29 0a`` plus a version/flags byte
followed by one value. Small integers live inside their type byte as 5-bit
ZigZag, other integers are ZigZag varints with Smile's 6-bit final group,
floats are split into 7-bit groups least significant first, and strings pick
the narrowest length class. Property names, and optionally short string
values, can be replaced by back-references to earlier occurrences.

Header flag bits (low nibble of the fourth byte)::

    0x04  raw binary may be present
    0x02  string values may be shared
    0x01  property names may be shared
"""

import struct
from dataclasses import dataclass
from decimal import Decimal

from .cursor import F32, F64, ByteCursor, widen_float
from .errors import (BadTag, DuplicateKey, Overflow, TrailingBytes, Truncated,
                     Unsupported)
from .intcodec import zigzag_decode, zigzag_encode
from .value import INT64_MAX, INT64_MIN, kind

MAGIC = b":)\n"
VERSION = 0

FLAG_SHARED_NAMES = 0x01
FLAG_SHARED_VALUES = 0x02
FLAG_RAW_BINARY = 0x04

EMPTY_STRING, NULL, FALSE, TRUE = 0x20, 0x21, 0x22, 0x23
INT32, INT64, BIG_INTEGER = 0x24, 0x25, 0x26
FLOAT32, FLOAT64, BIG_DECIMAL = 0x28, 0x29, 0x2A
LONG_ASCII, LONG_UNICODE, BINARY_7BIT = 0xE0, 0xE4, 0xE8
START_ARRAY, END_ARRAY, START_OBJECT, END_OBJECT = 0xF8, 0xF9, 0xFA, 0xFB
END_STRING, RAW_BINARY, END_OF_CONTENT = 0xFC, 0xFD, 0xFF

KEY_EMPTY, KEY_LONG = 0x20, 0x34

MAX_SHARED = 1024
# longest values that use the tiny/small classes and so may be shared
MAX_SHARED_VALUE_BYTES = 65

_U32 = struct.Struct(">I")
_U64 = struct.Struct(">Q")


@dataclass(frozen=True)
class SmileOptions:
    shared_names: bool = True
    shared_values: bool = False
    float_width: int = 64
    end_marker: bool = False

    @property
    def header_flags(self):
        return ((FLAG_SHARED_NAMES if self.shared_names else 0)
                | (FLAG_SHARED_VALUES if self.shared_values else 0))


# Byte layout produced by pysmile 0.2 for the bundled test document, minus
# the header flag byte it advertises but never acts on.
PYSMILE_OPTIONS = SmileOptions(shared_names=False, shared_values=False,
                               float_width=32)


def header(options=SmileOptions()):
    return MAGIC + bytes([(VERSION << 4) | options.header_flags])


def float7_encode(value, width=64):
    """IEEE bit pattern of ``value`` as 7-bit groups, least significant first."""
    if width == 32:
        (bits,) = _U32.unpack(F32.pack(value))
    elif width == 64:
        (bits,) = _U64.unpack(F64.pack(value))
    else:
        raise ValueError(f"width must be 32 or 64, not {width}")
    count = -(-width // 7)
    return bytes((bits >> (7 * i)) & 0x7F for i in range(count))


def float7_decode(groups, width=64):
    """Inverse of :func:`float7_encode`; bits above ``width`` are ignored."""
    bits = 0
    for i, g in enumerate(groups):
        bits |= (g & 0x7F) << (7 * i)
    bits &= (1 << width) - 1
    if width == 32:
        return F32.unpack(_U32.pack(bits))[0]
    return F64.unpack(_U64.pack(bits))[0]


def vint_encode(u):
    """Smile unsigned varint: 7-bit groups most significant first, last group 6 bits with 0x80 set."""
    last = 0x80 | (u & 0x3F)
    u >>= 6
    groups = []
    while u:
        groups.append(u & 0x7F)
        u >>= 7
    return bytes(reversed(groups)) + bytes([last])


def _valid_back_ref(index):
    # the second byte of a long reference must not collide with 0xfe/0xff
    return (index & 0xFF) < 0xFE


class _Encoder:
    def __init__(self, options):
        self.opts = options
        self.out = bytearray()
        self.names = {}
        self.name_count = 0
        self.values = {}
        self.value_count = 0

    def _remember_name(self, name):
        if self.name_count < MAX_SHARED:
            self.names[name] = self.name_count
            self.name_count += 1

    def _remember_value(self, text):
        if self.value_count < MAX_SHARED:
            self.values[text] = self.value_count
            self.value_count += 1

    def key(self, name):
        out = self.out
        if not name:
            out.append(KEY_EMPTY)
            return
        if self.opts.shared_names:
            ix = self.names.get(name)
            if ix is not None and _valid_back_ref(ix):
                if ix < 64:
                    out.append(0x40 + ix)
                else:
                    out += bytes([0x30 | (ix >> 8), ix & 0xFF])
                return
        raw = name.encode("utf-8")
        n = len(raw)
        if n == len(name) and n <= 64:
            out.append(0x80 + n - 1)
            out += raw
        elif n != len(name) and n <= 57:
            out.append(0xC0 + n - 2)
            out += raw
        else:
            out.append(KEY_LONG)
            out += raw
            out.append(END_STRING)
        if self.opts.shared_names:
            self._remember_name(name)

    def string(self, text):
        out = self.out
        if not text:
            out.append(EMPTY_STRING)
            return
        raw = text.encode("utf-8")
        n = len(raw)
        shareable = self.opts.shared_values and n <= MAX_SHARED_VALUE_BYTES
        if shareable:
            ix = self.values.get(text)
            if ix is not None and _valid_back_ref(ix):
                if ix < 31:
                    out.append(0x01 + ix)
                else:
                    out += bytes([0xEC | (ix >> 8), ix & 0xFF])
                return
        if n == len(text):
            if n <= 32:
                out.append(0x40 + n - 1)
            elif n <= 64:
                out.append(0x60 + n - 33)
            else:
                out.append(LONG_ASCII)
        else:
            if n <= 33:
                out.append(0x80 + n - 2)
            elif n <= 65:
                out.append(0xA0 + n - 34)
            else:
                out.append(LONG_UNICODE)
        out += raw
        if out[-n - 1] in (LONG_ASCII, LONG_UNICODE):
            out.append(END_STRING)
        elif shareable:
            self._remember_value(text)

    def integer(self, n):
        out = self.out
        if -16 <= n <= 15:
            out.append(0xC0 + zigzag_encode(n, 32))
        elif -(1 << 31) <= n < (1 << 31):
            out.append(INT32)
            out += vint_encode(zigzag_encode(n, 32))
        elif INT64_MIN <= n <= INT64_MAX:
            out.append(INT64)
            out += vint_encode(zigzag_encode(n, 64))
        else:
            raise Overflow(f"{n} is outside the signed 64-bit range", len(out))

    def real(self, x):
        if self.opts.float_width == 32:
            try:
                groups = float7_encode(x, 32)
            except OverflowError:
                pass
            else:
                self.out.append(FLOAT32)
                self.out += groups
                return
        self.out.append(FLOAT64)
        self.out += float7_encode(x, 64)

    def value(self, v):
        k = kind(v)
        out = self.out
        if k == "null":
            out.append(NULL)
        elif k == "bool":
            out.append(TRUE if v else FALSE)
        elif k == "int":
            self.integer(v)
        elif k == "float":
            self.real(v)
        elif k == "str":
            self.string(v)
        elif k == "array":
            out.append(START_ARRAY)
            for item in v:
                self.value(item)
            out.append(END_ARRAY)
        else:
            out.append(START_OBJECT)
            for name, item in v.items():
                self.key(name)
                self.value(item)
            out.append(END_OBJECT)


def encode(doc, options=None, **kwargs):
    """Encode ``doc``; keyword arguments override :class:`SmileOptions` fields."""
    if options is None:
        options = SmileOptions(**kwargs)
    elif kwargs:
        raise TypeError("pass either options or keyword overrides, not both")
    if options.float_width not in (32, 64):
        raise ValueError("float_width must be 32 or 64")
    enc = _Encoder(options)
    enc.out += header(options)
    enc.value(doc)
    if options.end_marker:
        enc.out.append(END_OF_CONTENT)
    return bytes(enc.out)


class _Decoder:
    def __init__(self, cur):
        self.cur = cur
        self.flags = 0
        self.names = []
        self.values = []

    def header(self):
        cur = self.cur
        if cur.remaining < 4:
            if cur.data[:3] != MAGIC[:cur.remaining]:
                raise BadTag(cur.data[0], 0, "missing Smile header")
            raise Truncated("incomplete Smile header", cur.remaining)
        if cur.data[:3] != MAGIC:
            raise BadTag(cur.data[0], 0, "missing Smile header ':)\\n'")
        cur.read(3)
        info = cur.byte()
        if info >> 4 != VERSION:
            raise Unsupported(f"Smile version {info >> 4}", 3)
        self.flags = info & 0x07
        cur.note("header", f"version 0, flags 0x{self.flags:x}")

    def vint(self, max_bytes, width, what):
        cur = self.cur
        start = cur.pos
        value = 0
        for _ in range(max_bytes):
            b = cur.byte()
            if b & 0x80:
                value = (value << 6) | (b & 0x3F)
                if value >> width:
                    raise Overflow(f"{what} exceeds {width} bits", start)
                return value
            value = (value << 7) | b
        raise Overflow(f"{what} varint longer than {max_bytes} bytes", start)

    def seven_bit_bytes(self, n):
        cur = self.cur
        out = bytearray()
        while n >= 7:
            acc = 0
            for _ in range(8):
                acc = (acc << 7) | (cur.byte() & 0x7F)
            out += acc.to_bytes(7, "big")
            n -= 7
        if n:
            acc = 0
            for _ in range(n):
                acc = (acc << 7) | (cur.byte() & 0x7F)
            acc = (acc << n) | (cur.byte() & ((1 << n) - 1))
            out += acc.to_bytes(n, "big")
        return bytes(out)

    def long_text(self):
        cur = self.cur
        end = cur.data.find(bytes([END_STRING]), cur.pos)
        if end < 0:
            raise Truncated("long string has no 0xfc terminator", len(cur.data))
        s = cur.text(end - cur.pos)
        cur.byte()
        return s

    def _shared(self, table, ix, start, what):
        if ix >= len(table):
            raise BadTag(self.cur.data[start], start,
                         f"{what} back-reference {ix} but only {len(table)} seen")
        return table[ix]

    def key(self):
        cur = self.cur
        start = cur.pos
        b = cur.byte()
        if b == KEY_EMPTY:
            cur.note("empty name", "''")
            return ""
        if 0x40 <= b <= 0x7F or 0x30 <= b <= 0x33:
            if not self.flags & FLAG_SHARED_NAMES:
                raise BadTag(b, start, "name back-reference without the shared-names flag")
            ix = b - 0x40 if b >= 0x40 else ((b & 0x03) << 8) | cur.byte()
            name = self._shared(self.names, ix, start, "name")
            cur.note(f"shared name ref #{ix}", repr(name))
            return name
        if 0x80 <= b <= 0xBF:
            cur.note("short ascii name", f"length {b - 0x7F}")
            name = cur.text(b - 0x7F)
        elif 0xC0 <= b <= 0xF7:
            cur.note("short unicode name", f"length {b - 0xBE}")
            name = cur.text(b - 0xBE)
        elif b == KEY_LONG:
            cur.note("long name", None)
            name = self.long_text()
        else:
            raise BadTag(b, start, f"0x{b:02x} is not a property-name token")
        cur.note("name bytes", repr(name))
        if self.flags & FLAG_SHARED_NAMES and len(self.names) < MAX_SHARED:
            self.names.append(name)
        return name

    def text_value(self, b, start):
        cur = self.cur
        # small classes continue the lengths of the tiny ones
        if b < 0x80:
            n, label = b - 0x3F, "tiny ascii" if b < 0x60 else "small ascii"
        else:
            n, label = b - 0x7E, "tiny unicode" if b < 0xA0 else "small unicode"
        cur.note(label, f"length {n}")
        s = cur.text(n)
        cur.note("string bytes", repr(s))
        if self.flags & FLAG_SHARED_VALUES and len(self.values) < MAX_SHARED:
            self.values.append(s)
        return s

    def value(self):
        cur = self.cur
        start = cur.pos
        b = cur.byte()
        if 0x01 <= b <= 0x1F or 0xEC <= b <= 0xEF:
            if not self.flags & FLAG_SHARED_VALUES:
                raise BadTag(b, start, "value back-reference without the shared-values flag")
            ix = b - 1 if b <= 0x1F else ((b & 0x03) << 8) | cur.byte()
            s = self._shared(self.values, ix, start, "string")
            cur.note(f"shared string ref #{ix}", repr(s))
            return s
        if b == EMPTY_STRING:
            cur.note("empty string", "''")
            return ""
        if b == NULL:
            cur.note("null", "null")
            return None
        if b == FALSE or b == TRUE:
            cur.note("bool", "true" if b == TRUE else "false")
            return b == TRUE
        if b == INT32 or b == INT64:
            width = 32 if b == INT32 else 64
            n = zigzag_decode(self.vint(5 if width == 32 else 10, width, "integer"), width)
            cur.note(f"int{width} zigzag varint", str(n))
            return n
        if b == FLOAT32 or b == FLOAT64:
            width = 32 if b == FLOAT32 else 64
            x = float7_decode(cur.read(5 if width == 32 else 10), width)
            if x != x or x in (float("inf"), float("-inf")):
                raise Unsupported("NaN and infinities are not JSON values", start)
            if width == 32:
                x = widen_float(x, F32)
            cur.note(f"float{width} 7-bit groups", repr(x))
            return x
        if b == BIG_INTEGER:
            raw = self.seven_bit_bytes(self.vint(5, 32, "length"))
            n = int.from_bytes(raw, "big", signed=True)
            if not INT64_MIN <= n <= INT64_MAX:
                raise Overflow(f"BigInteger {n} exceeds signed 64 bits", start)
            cur.note("big integer", str(n))
            return n
        if b == BIG_DECIMAL:
            scale = zigzag_decode(self.vint(5, 32, "scale"), 32)
            raw = self.seven_bit_bytes(self.vint(5, 32, "length"))
            d = Decimal(int.from_bytes(raw, "big", signed=True)).scaleb(-scale)
            if scale <= 0:
                n = int(d)
                if not INT64_MIN <= n <= INT64_MAX:
                    raise Overflow(f"BigDecimal {d} exceeds signed 64 bits", start)
                cur.note("big decimal", str(n))
                return n
            x = float(d)
            if x in (float("inf"), float("-inf")):
                raise Overflow(f"BigDecimal {d} overflows binary64", start)
            cur.note("big decimal", repr(x))
            return x
        if 0x40 <= b <= 0xBF:
            return self.text_value(b, start)
        if 0xC0 <= b <= 0xDF:
            n = zigzag_decode(b & 0x1F, 32)
            cur.note("small int", str(n))
            return n
        if b == LONG_ASCII or b == LONG_UNICODE:
            cur.note("long ascii" if b == LONG_ASCII else "long unicode", None)
            s = self.long_text()
            cur.note("string bytes + 0xfc", repr(s))
            return s
        if b == START_ARRAY:
            cur.note("start array", None)
            items = []
            while cur.peek() != END_ARRAY:
                items.append(self.value())
            cur.byte()
            cur.note("end array", f"{len(items)} items")
            return items
        if b == START_OBJECT:
            cur.note("start object", None)
            obj = {}
            while cur.peek() != END_OBJECT:
                key_at = cur.pos
                name = self.key()
                if name in obj:
                    raise DuplicateKey(f"repeated key {name!r}", key_at)
                obj[name] = self.value()
            cur.byte()
            cur.note("end object", f"{len(obj)} entries")
            return obj
        if b == BINARY_7BIT or b == RAW_BINARY:
            raise Unsupported("binary values are not JSON content", start)
        raise BadTag(b, start)


def read(cur):
    dec = _Decoder(cur)
    dec.header()
    value = dec.value()
    if not cur.at_end() and cur.peek() == END_OF_CONTENT:
        cur.byte()
        cur.note("end-of-content marker", None)
    return value


def decode(data):
    cur = ByteCursor(data)
    value = read(cur)
    if not cur.at_end():
        raise TrailingBytes(f"{cur.remaining} bytes after the document", cur.pos)
    return value


def string_class(token):
    """Name of the value-string class a type byte belongs to."""
    if token == EMPTY_STRING:
        return "empty"
    if 0x40 <= token <= 0x5F:
        return "tiny ascii"
    if 0x60 <= token <= 0x7F:
        return "small ascii"
    if 0x80 <= token <= 0x9F:
        return "tiny unicode"
    if 0xA0 <= token <= 0xBF:
        return "small unicode"
    if token == LONG_ASCII:
        return "long ascii"
    if token == LONG_UNICODE:
        return "long unicode"
    raise ValueError(f"0x{token:02x} is not a string token")
