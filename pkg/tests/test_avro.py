import io
import struct

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binjson import avro
from binjson.avro.schema import parse_schema
from binjson.cursor import widen_float
from binjson.errors import (Malformed, RangeError, ResolutionError,
                            SchemaMismatch, SchemaSyntax, TrailingBytes,
                            Truncated)
from binjson.intcodec import encode_zigzag_varint
from binjson.value import canon_eq, parse_json

fastavro = pytest.importorskip("fastavro")

F32 = struct.Struct(">f")

RICH = {
    "type": "record", "name": "All", "namespace": "t",
    "fields": [
        {"name": "n", "type": "null"},
        {"name": "b", "type": "boolean"},
        {"name": "i", "type": "int"},
        {"name": "l", "type": "long"},
        {"name": "f", "type": "float"},
        {"name": "d", "type": "double"},
        {"name": "by", "type": "bytes"},
        {"name": "s", "type": "string"},
        {"name": "e", "type": {"type": "enum", "name": "Suit", "symbols": ["S", "H", "D", "C"]}},
        {"name": "a", "type": {"type": "array", "items": "long"}},
        {"name": "m", "type": {"type": "map", "values": "string"}},
        {"name": "x", "type": {"type": "fixed", "name": "Four", "size": 4}},
        {"name": "u", "type": ["null", "string", "long"]},
        {"name": "node", "type": {"type": "record", "name": "Node", "fields": [
            {"name": "v", "type": "int"},
            {"name": "next", "type": ["null", "Node"], "default": None}]}},
    ],
}

latin = st.text(st.characters(max_codepoint=255))
float32s = st.floats(width=32, allow_nan=False, allow_infinity=False).map(
    lambda x: widen_float(x, F32))
nodes = st.recursive(
    st.builds(lambda v: {"v": v, "next": None}, st.integers(-2**31, 2**31 - 1)),
    lambda inner: st.builds(lambda v, n: {"v": v, "next": n},
                            st.integers(-2**31, 2**31 - 1), inner),
    max_leaves=4)
rich_values = st.fixed_dictionaries({
    "n": st.none(),
    "b": st.booleans(),
    "i": st.integers(-2**31, 2**31 - 1),
    "l": st.integers(-2**63, 2**63 - 1),
    "f": float32s,
    "d": st.floats(allow_nan=False, allow_infinity=False),
    "by": latin,
    "s": st.text(st.characters(blacklist_categories=("Cs",))),
    "e": st.sampled_from(["S", "H", "D", "C"]),
    "a": st.lists(st.integers(-2**63, 2**63 - 1), max_size=5),
    "m": st.dictionaries(st.text(max_size=5), st.text(max_size=5), max_size=4),
    "x": st.text(st.characters(max_codepoint=255), min_size=4, max_size=4),
    "u": st.none() | st.text(max_size=5) | st.integers(-2**63, 2**63 - 1),
    "node": nodes,
}).map(lambda v: {f["name"]: v[f["name"]] for f in RICH["fields"]})


def to_fastavro(v):
    out = dict(v)
    out["by"] = v["by"].encode("latin-1")
    out["x"] = v["x"].encode("latin-1")
    return out


def fastavro_bytes(schema, value):
    buf = io.BytesIO()
    fastavro.schemaless_writer(buf, fastavro.parse_schema(schema), value)
    return buf.getvalue()


@pytest.fixture(scope="module")
def rich():
    return parse_schema(RICH)


def test_parse_primitives_and_unions():
    assert parse_schema("long").type == "long"
    u = parse_schema(["string", "int", "null"])
    assert [b.type for b in u.branches] == ["string", "int", "null"]
    arr = parse_schema({"type": "array", "items": "long"})
    assert arr.type == "array" and arr.items.type == "long"
    assert parse_schema({"type": "int"}).type == "int"


def test_parse_named_references(rich):
    node = rich.field("node").type
    assert node.fullname == "t.Node"
    assert node.field("next").type.branches[1] is node


@pytest.mark.parametrize("doc, path", [
    ("lng", "$"),
    ({"type": "record", "name": "R"}, "$"),
    ({"type": "record", "name": "R", "fields": [{"name": "a"}]}, "$.fields[0]"),
    ({"type": "record", "name": "R", "fields": [{"name": "a", "type": "x"}]},
     "$.fields[0].type"),
    ({"type": "record", "name": "R", "fields": [
        {"name": "a", "type": "int"}, {"name": "a", "type": "int"}]}, "$.fields[1]"),
    (["int", "int"], "$[1]"),
    (["int", ["null"]], "$[1]"),
    ({"type": "enum", "name": "E", "symbols": ["A", "A"]}, "$"),
    ({"type": "enum", "name": "E", "symbols": ["A"], "default": "B"}, "$"),
    ({"type": "fixed", "name": "F", "size": -1}, "$"),
    ({"type": "array"}, "$"),
    ({"type": "map"}, "$"),
    ({"type": "record", "name": "1x", "fields": []}, "$"),
    ({"type": "record", "name": "R", "fields": [
        {"name": "a", "type": ["null", "int"], "default": 1}]}, "$.fields[0].default"),
    ({"type": "record", "name": "R", "fields": [
        {"name": "a", "type": {"type": "record", "name": "R", "fields": []}}]},
     "$.fields[0].type"),
    (5, "$"),
])
def test_schema_syntax_errors(doc, path):
    with pytest.raises(SchemaSyntax) as info:
        parse_schema(doc)
    assert info.value.path == path


@pytest.mark.parametrize("schema, value, encoded", [
    (["string", "int", "null"], None, "04"),
    ("string", "", "00"),
    ("boolean", False, "00"),
    ("boolean", True, "01"),
    ({"type": "array", "items": "long"}, [1, 2], "04020400"),
    ({"type": "array", "items": "long"}, [], "00"),
    ("int", -25200, "df8903"),
    ("string", "ox03", "086f783033"),
    ("double", -90.0715, "7f6abc74938456c0"),
    ({"type": "enum", "name": "E", "symbols": ["A", "B", "C"]}, "C", "04"),
    ({"type": "map", "values": "int"}, {"a": 1}, "0202610200"),
    ({"type": "fixed", "name": "F", "size": 2}, "\x01\xff", "01ff"),
    ("bytes", "\x00\xff", "0400ff"),
])
def test_vectors(schema, value, encoded):
    s = parse_schema(schema)
    assert avro.encode(value, s).hex() == encoded
    assert canon_eq(avro.decode(bytes.fromhex(encoded), s), value)


def test_string_length_counts_bytes():
    assert avro.encode("é", parse_schema("string")).hex() == "04c3a9"


def test_union_index_is_even():
    u = parse_schema(["null", "string", "long", "double"])
    for v in (None, "x", 5, 2.5):
        assert avro.encode(v, u)[0] % 2 == 0


def test_union_branch_choice():
    u = parse_schema(["int", "long", "double"])
    assert avro.encode(1, u)[0] == 0
    assert avro.encode(2**40, u)[0] == 2
    assert avro.encode(0.5, u)[0] == 4
    assert avro.encode(1, parse_schema(["null", "double"]))[0] == 2


def test_defaults_fill_missing_fields():
    s = parse_schema({"type": "record", "name": "R", "fields": [
        {"name": "a", "type": ["null", "int"], "default": None},
        {"name": "b", "type": "int", "default": 7}]})
    assert avro.encode({}, s).hex() == "000e"
    # fields equal to their defaults are still written
    assert avro.encode({"a": None, "b": 7}, s).hex() == "000e"


def test_encode_errors():
    with pytest.raises(RangeError):
        avro.encode(2**31, parse_schema("int"))
    with pytest.raises(SchemaMismatch) as info:
        avro.encode({"a": "x"}, parse_schema(
            {"type": "record", "name": "R", "fields": [{"name": "a", "type": "int"}]}))
    assert info.value.path == "$.a"
    with pytest.raises(SchemaMismatch):
        avro.encode({}, parse_schema(
            {"type": "record", "name": "R", "fields": [{"name": "a", "type": "int"}]}))
    with pytest.raises(SchemaMismatch):
        avro.encode({"zz": 1}, parse_schema({"type": "record", "name": "R", "fields": []}))
    with pytest.raises(SchemaMismatch):
        avro.encode("D", parse_schema({"type": "enum", "name": "E", "symbols": ["A"]}))
    with pytest.raises(SchemaMismatch):
        avro.encode(True, parse_schema(["null", "string"]))
    with pytest.raises(SchemaMismatch):
        avro.encode("€", parse_schema("bytes"))
    with pytest.raises(SchemaMismatch):
        avro.encode(1e300, parse_schema("float"))


def test_decode_negative_block_count():
    s = parse_schema({"type": "array", "items": "int"})
    # count -2 with a byte size of 2, then the terminator
    data = encode_zigzag_varint(-2) + encode_zigzag_varint(2) + b"\x02\x04\x00"
    assert avro.decode(data, s) == [1, 2]


def test_decode_multiple_blocks():
    s = parse_schema({"type": "map", "values": "int"})
    data = bytes.fromhex("02 02 61 02  02 02 62 04  00".replace(" ", ""))
    assert avro.decode(data, s) == {"a": 1, "b": 2}


@pytest.mark.parametrize("schema, hexdata, error", [
    ("int", "", Truncated),
    ("string", "08616263", Truncated),
    ("string", "03", Malformed),
    ("int", "0200", TrailingBytes),
    (["null", "int"], "04", SchemaMismatch),
    ({"type": "enum", "name": "E", "symbols": ["A"]}, "02", SchemaMismatch),
    ({"type": "array", "items": "int"}, "7e", Malformed),
])
def test_decode_errors(schema, hexdata, error):
    with pytest.raises(error):
        avro.decode(bytes.fromhex(hexdata), parse_schema(schema))


def test_resolution_examples():
    assert avro.decode(b"\x04", parse_schema(["string", "int", "null"])) is None
    got = avro.decode(b"\x02", parse_schema("int"), parse_schema("long"))
    assert got == 1 and type(got) is int
    assert avro.decode(b"\x02", parse_schema("int"), parse_schema("double")) == 1.0
    with pytest.raises(ResolutionError):
        avro.decode(b"\x00", parse_schema("string"), parse_schema("bytes"))


def test_resolution_reorders_drops_and_defaults():
    writer = parse_schema({"type": "record", "name": "R", "fields": [
        {"name": "a", "type": "int"}, {"name": "gone", "type": "string"},
        {"name": "b", "type": "int"}]})
    reader = parse_schema({"type": "record", "name": "R", "fields": [
        {"name": "b", "type": "long"}, {"name": "a", "type": "double"},
        {"name": "new", "type": ["null", "string"], "default": None}]})
    data = avro.encode({"a": 1, "gone": "xyz", "b": 2}, writer)
    assert canon_eq(avro.decode(data, writer, reader), {"b": 2, "a": 1.0, "new": None})


def test_resolution_unions_and_enums():
    e1 = parse_schema({"type": "enum", "name": "E", "symbols": ["A", "B"]})
    e2 = parse_schema({"type": "enum", "name": "E", "symbols": ["A"], "default": "A"})
    e3 = parse_schema({"type": "enum", "name": "E", "symbols": ["A"]})
    assert avro.decode(b"\x02", e1, e2) == "A"
    with pytest.raises(ResolutionError):
        avro.decode(b"\x02", e1, e3)
    w = parse_schema(["null", "int"])
    assert avro.decode(b"\x02\x04", w, parse_schema(["null", "long"])) == 2
    assert avro.decode(b"\x02\x04", w, parse_schema("long")) == 2
    assert avro.decode(b"\x04", parse_schema("int"), parse_schema(["null", "string", "long"])) == 2
    with pytest.raises(ResolutionError):
        avro.decode(b"\x04", parse_schema("int"), parse_schema(["null", "string"]))


def test_missing_reader_field_without_default():
    w = parse_schema({"type": "record", "name": "R", "fields": []})
    r = parse_schema({"type": "record", "name": "R", "fields": [{"name": "a", "type": "int"}]})
    with pytest.raises(ResolutionError) as info:
        avro.decode(b"", w, r)
    assert info.value.path == "$.a"


def test_canonical_fixture(canonical_doc, fixture):
    schema = parse_schema(parse_json(fixture("avsc")))
    assert avro.encode(canonical_doc, schema) == fixture("avro")
    assert len(fixture("avro")) == 56
    decoded = avro.decode(fixture("avro"), schema)
    # absent nullable fields come back as explicit nulls
    assert decoded["data"][3] == {"name": None, "staff": None, "extra": None}
    assert avro.encode(decoded, schema) == fixture("avro")


def test_canonical_fixture_matches_reference(canonical_doc, fixture):
    assert fastavro_bytes(parse_json(fixture("avsc")), canonical_doc) == fixture("avro")


@given(rich_values)
def test_roundtrip(v):
    s = parse_schema(RICH)
    assert canon_eq(avro.decode(avro.encode(v, s), s), v)


@given(rich_values)
def test_matches_reference_library(v):
    assert avro.encode(v, parse_schema(RICH)) == fastavro_bytes(RICH, to_fastavro(v))
