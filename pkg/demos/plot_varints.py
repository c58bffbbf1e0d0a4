"""
Variable-length integers
========================

Avro and Smile store integers as base-128 groups. Signed values are first
folded with ZigZag so that small magnitudes stay short whatever their sign.
"""

from binjson.intcodec import (encode_zigzag_varint, leb128_encode_signed_twos,
                              leb128_encode_unsigned, zigzag_encode)

# the time zone offset from the test document
n = -25200
u = zigzag_encode(n, 32)
print(n, "zigzag ->", u, "->", leb128_encode_unsigned(u).hex(" "))

# without ZigZag a negative number always costs the full width
print("two's complement:", leb128_encode_signed_twos(n, 64).hex(" "))

print(f"{'n':>8} {'zigzag':>8}  bytes")
for n in (0, -1, 1, -64, 64, 1000, -1000, 2**31 - 1, -2**31):
    print(f"{n:>12} {zigzag_encode(n, 64):>12}  {encode_zigzag_varint(n).hex(' ')}")
