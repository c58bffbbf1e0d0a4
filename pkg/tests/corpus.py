"""Deterministic random JSON documents for round-trip and invariant checks."""

import math
import random
import struct

from hypothesis import strategies as st

INT64_MIN, INT64_MAX = -(1 << 63), (1 << 63) - 1

MAX_DEPTH = 8
MAX_STRING = 64

# code point pools: ASCII, Latin-1, BMP outside the surrogates, astral
_POOLS = [(0x20, 0x7E), (0x00, 0x1F), (0xA0, 0xFF), (0x100, 0xD7FF),
          (0xE000, 0xFFFD), (0x10000, 0x10FFFF)]
_POOL_WEIGHTS = [60, 2, 10, 14, 6, 8]


def random_string(rng, max_len=MAX_STRING, allow_nul=True):
    n = rng.choice([0, 1, 2, 3, 5, 8, 13, 21, 32, 33, 64, rng.randint(0, max_len)])
    n = min(n, max_len)
    out = []
    for _ in range(n):
        lo, hi = rng.choices(_POOLS, _POOL_WEIGHTS)[0]
        cp = rng.randint(lo, hi)
        if cp == 0 and not allow_nul:
            cp = 0x30
        out.append(chr(cp))
    return "".join(out)


def random_int(rng):
    r = rng.random()
    if r < 0.3:
        return rng.randint(-40, 300)
    if r < 0.5:
        bits = rng.choice([7, 8, 15, 16, 31, 32, 63])
        n = rng.choice([1 << bits, (1 << bits) - 1, -(1 << bits), -(1 << bits) - 1])
        return max(INT64_MIN, min(INT64_MAX, n))
    if r < 0.55:
        return rng.choice([INT64_MIN, INT64_MAX, 0, -1])
    return rng.randint(INT64_MIN, INT64_MAX)


def random_float(rng):
    r = rng.random()
    if r < 0.3:
        return round(rng.uniform(-1e4, 1e4), rng.randint(0, 6))
    if r < 0.4:
        return rng.choice([0.0, -0.0, 0.5, -1.5, 1e300, -1e-300, 5e-324, 1.7976931348623157e308])
    while True:
        (x,) = struct.unpack("<d", rng.getrandbits(64).to_bytes(8, "little"))
        if math.isfinite(x):
            return x


def random_value(rng, depth=0, max_depth=MAX_DEPTH):
    container_p = 0.45 if depth == 0 else 0.3 / (1 + depth * 0.5)
    if depth < max_depth and rng.random() < container_p:
        n = rng.choice([0, 0, 1, 2, 3, 4, 6, rng.randint(0, 12)])
        if rng.random() < 0.5:
            return [random_value(rng, depth + 1, max_depth) for _ in range(n)]
        return random_object(rng, n, depth, max_depth)
    r = rng.random()
    if r < 0.08:
        return None
    if r < 0.16:
        return rng.random() < 0.5
    if r < 0.46:
        return random_int(rng)
    if r < 0.66:
        return random_float(rng)
    return random_string(rng)


def random_object(rng, n, depth=0, max_depth=MAX_DEPTH):
    obj = {}
    for _ in range(n):
        obj[random_string(rng, 16, allow_nul=False)] = random_value(rng, depth + 1, max_depth)
    return obj


def documents(count, seed=0, object_root=False):
    """``count`` documents from a fixed seed; the same seed always yields the same list."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        if object_root:
            out.append(random_object(rng, rng.randint(0, 8)))
        else:
            out.append(random_value(rng))
    return out


def depth(value):
    if isinstance(value, list):
        return 1 + max((depth(v) for v in value), default=0)
    if isinstance(value, dict):
        return 1 + max((depth(v) for v in value.values()), default=0)
    return 0


# hypothesis strategies over the same document model
_text = st.text(st.characters(blacklist_categories=("Cs",)), max_size=MAX_STRING)
_keys = st.text(st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"),
                max_size=16)
scalars = (st.none() | st.booleans()
           | st.integers(INT64_MIN, INT64_MAX)
           | st.floats(allow_nan=False, allow_infinity=False)
           | _text)


def _extend(children):
    return (st.lists(children, max_size=6)
            | st.dictionaries(_keys, children, max_size=6))


json_values = st.recursive(scalars, _extend, max_leaves=30)
json_objects = st.dictionaries(_keys, json_values, max_size=6)
