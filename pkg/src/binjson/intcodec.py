"""LEB128 variable-length integers and ZigZag signed-to-unsigned mapping.

Both are building blocks for the Avro and Smile codecs.
"""

from .errors import Overflow, RangeError, Truncated

UINT64_MAX = (1 << 64) - 1
MAX_VARINT_BYTES = 10


def _check_width(width):
    if width not in (32, 64):
        raise ValueError(f"width must be 32 or 64, not {width}")


def _check_signed(n, width):
    _check_width(width)
    if not -(1 << (width - 1)) <= n < (1 << (width - 1)):
        raise RangeError(f"{n} does not fit in a signed {width}-bit integer")


def leb128_encode_unsigned(n):
    """Encode ``0 <= n < 2**64`` as little-endian base-128 groups."""
    if not 0 <= n <= UINT64_MAX:
        raise RangeError(f"{n} is not an unsigned 64-bit integer")
    out = bytearray()
    while True:
        group = n & 0x7F
        n >>= 7
        if n:
            out.append(group | 0x80)
        else:
            out.append(group)
            return bytes(out)


def leb128_decode_unsigned(data, offset=0):
    """Decode one varint starting at ``offset``.

    Returns ``(value, consumed)``. Redundant high zero groups are accepted;
    anything longer than ten groups or wider than 64 bits is rejected.
    """
    value = 0
    shift = 0
    pos = offset
    end = len(data)
    for i in range(MAX_VARINT_BYTES):
        if pos >= end:
            raise Truncated("varint ends before its final group", pos)
        b = data[pos]
        pos += 1
        value |= (b & 0x7F) << shift
        if not b & 0x80:
            if value > UINT64_MAX:
                raise Overflow("varint exceeds 64 bits", offset)
            return value, pos - offset
        shift += 7
    raise Overflow(f"varint longer than {MAX_VARINT_BYTES} bytes", offset)


def leb128_encode_signed_twos(n, width):
    """Two's complement ``n`` at ``width`` bits, then encode as unsigned."""
    _check_signed(n, width)
    return leb128_encode_unsigned(n & ((1 << width) - 1))


def leb128_decode_signed_twos(data, width, offset=0):
    _check_width(width)
    value, consumed = leb128_decode_unsigned(data, offset)
    if value >> width:
        raise Overflow(f"varint exceeds {width} bits", offset)
    if value >> (width - 1):
        value -= 1 << width
    return value, consumed


def zigzag_encode(n, width):
    _check_signed(n, width)
    # Python's >> on negative ints is already arithmetic
    return ((n << 1) ^ (n >> (width - 1))) & ((1 << width) - 1)


def zigzag_decode(u, width):
    _check_width(width)
    if not 0 <= u < (1 << width):
        raise RangeError(f"{u} does not fit in an unsigned {width}-bit integer")
    return (u >> 1) ^ -(u & 1)


def encode_zigzag_varint(n, width=64):
    """ZigZag then LEB128, the integer wire form used by Avro."""
    return leb128_encode_unsigned(zigzag_encode(n, width))


def decode_zigzag_varint(data, width=64, offset=0):
    value, consumed = leb128_decode_unsigned(data, offset)
    if value >> width:
        raise Overflow(f"zigzag varint exceeds {width} bits", offset)
    return zigzag_decode(value, width), consumed
