"""
Encoded size of one document in six formats
===========================================

The same small JSON document is written with every codec and the byte
counts are compared. Avro is the only format that needs a schema, which is
also why it is the smallest.
"""

from binjson.cli import size_table
from binjson.value import load_canonical_doc, load_fixture, dump_json, parse_json

doc = load_canonical_doc()
print(dump_json(doc, indent=2))
print("json (compact):", len(dump_json(doc).encode()), "bytes")

# the schema travels separately from the data
schema = parse_json(load_fixture("canonical.avsc"))
for title, size in size_table(doc, schema):
    print(f"{title:<12}{size:>5}")
