import pytest
from hypothesis import given

from binjson import ubjson
from binjson.errors import (BadTag, DuplicateKey, InvalidUtf8, Overflow,
                            TrailingBytes, Truncated, Unsupported)
from binjson.value import canon_eq
from corpus import json_values

py_ubjson = pytest.importorskip("ubjson")


@pytest.mark.parametrize("value, encoded", [
    (None, b"Z"), (True, b"T"), (False, b"F"),
    (0, b"U\x00"), (5, b"U\x05"), (255, b"U\xff"),
    (-1, b"i\xff"), (-128, b"i\x80"), (256, b"I\x01\x00"), (-129, b"I\xff\x7f"),
    (-25200, b"I\x9d\x90"), (40000, b"l\x00\x00\x9c\x40"),
    (2**40, b"L\x00\x00\x01\x00\x00\x00\x00\x00"),
    (1.5, b"D\x3f\xf8\x00\x00\x00\x00\x00\x00"),
    (0.0, b"d\x00\x00\x00\x00"), (-0.0, b"d\x80\x00\x00\x00"),
    ("a", b"Ca"), ("", b"SU\x00"), ("ox03", b"SU\x04ox03"), ("é", b"SU\x02\xc3\xa9"),
    ([], b"[]"), ({}, b"{}"),
    ({"tags": []}, b"{U\x04tags[]}"),
])
def test_vectors(value, encoded):
    assert ubjson.encode(value) == encoded
    assert canon_eq(ubjson.decode(encoded), value)


@pytest.mark.parametrize("encoded, value", [
    (b"d\x3f\xc0\x00\x00", 1.5),
    (b"HU\x0512345", 12345),
    (b"HU\x031.5", 1.5),
    (b"[NU\x01N]", [1]),
    (b"N{U\x01aZ}", {"a": None}),
])
def test_decode_only_forms(encoded, value):
    assert canon_eq(ubjson.decode(encoded), value)


def test_subnormal_uses_exact_decimal():
    enc = ubjson.encode(5e-324)
    assert enc[:1] == b"H" and b"E-324" in enc
    assert ubjson.decode(enc) == 5e-324


@given(json_values)
def test_matches_reference_library(v):
    assert ubjson.encode(v) == py_ubjson.dumpb(v)


@given(json_values)
def test_reads_reference_output(v):
    assert canon_eq(ubjson.decode(py_ubjson.dumpb(v)), v)


def test_canonical_fixture(canonical_doc, fixture):
    assert ubjson.encode(canonical_doc) == fixture("ubj")
    assert canon_eq(ubjson.decode(fixture("ubj")), canonical_doc)


@pytest.mark.parametrize("data, error", [
    (b"", Truncated),
    (b"X", BadTag),
    (b"[$U#U\x02\x01\x02", Unsupported),
    (b"{#U\x00", Unsupported),
    (b"C\xc3", InvalidUtf8),
    (b"SU\x02\xff\xfe", InvalidUtf8),
    (b"HU\x14" + b"9" * 20, Overflow),
    (b"{U\x01aTU\x01aF}", DuplicateKey),
    (b"{SU\x01aT}", BadTag),
    (b"[U\x01", Truncated),
    (b"ZZ", TrailingBytes),
])
def test_errors(data, error):
    with pytest.raises(error):
        ubjson.decode(data)
