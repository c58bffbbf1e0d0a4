"""
Annotated hexdumps
==================

Every decoder records a labelled span for each byte it consumes. The
inspector lays those spans beside an xxd-style dump, which makes it easy to
see where the bytes of each format go.
"""

from binjson import inspect
from binjson.formats import FormatId, annotate, encode

doc = {"tz": -25200, "coord": [-90.0715, 29.951], "name": "ox03"}

for fmt in (FormatId.MESSAGEPACK, FormatId.CBOR, FormatId.SMILE):
    data = encode(fmt, doc)
    value, spans, error = annotate(fmt, data)
    print(f"--- {fmt.title}, {len(data)} bytes")
    print(inspect.render(data, spans, error))

# a damaged buffer still shows everything up to the failure
data = encode(FormatId.BSON, doc)[:20]
value, spans, error = annotate(FormatId.BSON, data)
print("--- truncated BSON")
print(inspect.render(data, spans, error))
