"""
Avro schema evolution
=====================

A reader can decode data written with an older or newer schema if the two
resolve. Here a record grows a field, an int widens to a long and an enum
gains a symbol, and the compatibility verdict is printed for each step.
"""

from binjson import avro
from binjson.avro import check_compat, check_transitive, combine
from binjson.avro.schema import parse_schema

v1 = parse_schema({"type": "record", "name": "User", "fields": [
    {"name": "id", "type": "int"}]})
v2 = parse_schema({"type": "record", "name": "User", "fields": [
    {"name": "id", "type": "long"},
    {"name": "email", "type": ["null", "string"], "default": None}]})
v3 = parse_schema({"type": "record", "name": "User", "fields": [
    {"name": "id", "type": "long"},
    {"name": "email", "type": ["null", "string"], "default": None},
    {"name": "role", "type": {"type": "enum", "name": "Role",
                              "symbols": ["USER", "ADMIN"]},
     "default": "USER"}]})

print("v1 -> v2:", check_compat(v1, v2))
print("v2 -> v3:", check_compat(v2, v3))
print("v3 against all history:", combine(check_transitive(v3, [v1, v2])))

# old data read with the new schema: id promoted, email filled from its default
old_bytes = avro.encode({"id": 42}, v1)
print(old_bytes.hex(), "->", avro.decode(old_bytes, v1, v2))
