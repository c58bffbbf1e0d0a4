import struct

import pytest
from hypothesis import given

from binjson import bson
from binjson.errors import (BadTag, DuplicateKey, KeyContainsNul,
                            LengthMismatch, Malformed, TopLevelShape,
                            TrailingBytes, Truncated, Unsupported)
from binjson.value import canon_eq
from corpus import json_objects

pymongo_bson = pytest.importorskip("bson")


def frames_ok(data):
    """Check every frame: the int32 prefix equals its byte length and it ends in 0x00."""
    def frame(pos):
        (length,) = struct.unpack_from("<i", data, pos)
        end = pos + length
        assert data[end - 1] == 0
        p = pos + 4
        while data[p] != 0:
            tag = data[p]
            p = data.index(b"\x00", p + 1) + 1
            if tag in (0x03, 0x04):
                p = frame(p)
            elif tag == 0x02:
                p += 4 + struct.unpack_from("<i", data, p)[0]
            else:
                p += {0x01: 8, 0x08: 1, 0x0A: 0, 0x10: 4, 0x12: 8}[tag]
        assert p + 1 == end
        return end

    assert frame(0) == len(data)


@pytest.mark.parametrize("value, encoded", [
    ({}, "0500000000"),
    ({"a": None}, "080000000a610000"),
    ({"a": True}, "0900000008610001" "00"),
    ({"a": 1}, "0c0000001061000100000000"),
    ({"a": 2**31}, "100000001261000000008000000000" "00"),
    ({"a": 1.5}, "10000000016100000000000000f83f00"),
    ({"a": "b"}, "0e00000002610002000000620000"),
    ({"a": [True]}, "1100000004610009000000083000010000"),
    ({"a": {}}, "0d000000036100050000000000"),
])
def test_vectors(value, encoded):
    assert bson.encode(value).hex() == encoded
    assert canon_eq(bson.decode(bytes.fromhex(encoded)), value)


def test_array_keys_count_from_zero():
    enc = bson.encode({"a": [7, 8]})
    assert b"\x100\x00\x07" in enc and b"\x101\x00\x08" in enc


@given(json_objects)
def test_matches_reference_library(v):
    assert bson.encode(v) == pymongo_bson.encode(v)


@given(json_objects)
def test_reads_reference_output(v):
    assert canon_eq(bson.decode(pymongo_bson.encode(v)), v)


@given(json_objects)
def test_framing_invariant(v):
    frames_ok(bson.encode(v))


def test_canonical_fixture(canonical_doc, fixture):
    assert bson.encode(canonical_doc) == fixture("bson")
    assert canon_eq(bson.decode(fixture("bson")), canonical_doc)
    frames_ok(fixture("bson"))


@pytest.mark.parametrize("value", [True, 1, "x", [1], None])
def test_root_must_be_object(value):
    with pytest.raises(TopLevelShape):
        bson.encode(value)


def test_key_with_nul():
    with pytest.raises(KeyContainsNul):
        bson.encode({"a\x00b": 1})


def test_oversized_integer():
    with pytest.raises(Unsupported):
        bson.encode({"a": 2**63})


@pytest.mark.parametrize("hexdata, error", [
    ("", Truncated),
    ("0500", Truncated),
    ("04000000", LengthMismatch),
    ("060000000000", LengthMismatch),
    ("0500000001", Truncated),
    ("0a00000000", Truncated),
    ("080000000b610000", Unsupported),
    ("0800000020610000", BadTag),
    ("0900000008610002" "00", BadTag),
    ("1100000004610009000000083100010000", Malformed),
    ("0b0000000a61000a610000", DuplicateKey),
    ("0e00000002610005000000620000", Truncated),
    ("0e00000002610002000000626300", LengthMismatch),
    ("050000000000", TrailingBytes),
])
def test_errors(hexdata, error):
    with pytest.raises(error):
        bson.decode(bytes.fromhex(hexdata))
