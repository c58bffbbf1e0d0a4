"""Avro binary encoding, schema parsing and compatibility checks."""

from .codec import decode, encode, read
from .compat import (CompatibilityVerdict, Level, can_read, check_compat,
                     check_transitive, combine)
from .schema import (AvroSchema, Array, Enum, Field, Fixed, Map, Primitive,
                     Record, Union, parse_schema)

__all__ = [
    "AvroSchema", "Array", "CompatibilityVerdict", "Enum", "Field", "Fixed",
    "Level", "Map", "Primitive", "Record", "Union", "can_read", "check_compat",
    "check_transitive", "combine", "decode", "encode", "parse_schema", "read",
]
