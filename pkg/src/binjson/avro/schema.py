"""Avro schemas parsed from the JSON schema dialect.

Schemas are plain objects. Named types (records, enums, fixed) may be
referenced by name after their definition, which lets records be recursive;
comparisons between named types therefore go by identity or by name, never
by structural equality.
"""

import re
import struct

from ..errors import SchemaSyntax
from ..value import INT64_MAX, INT64_MIN, kind

PRIMITIVES = ("null", "boolean", "int", "long", "float", "double", "bytes",
              "string")

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_F32 = struct.Struct(">f")


class AvroSchema:
    """Base class; ``type`` is the Avro type name of the variant."""

    type = None

    def __repr__(self):
        return f"{type(self).__name__}({self.type})"


class Primitive(AvroSchema):
    __slots__ = ("type",)

    def __init__(self, name):
        if name not in PRIMITIVES:
            raise ValueError(f"{name!r} is not a primitive type")
        self.type = name

    def __eq__(self, other):
        return isinstance(other, Primitive) and other.type == self.type

    def __hash__(self):
        return hash(self.type)


NULL, BOOLEAN, INT, LONG = (Primitive(t) for t in PRIMITIVES[:4])
FLOAT, DOUBLE, BYTES, STRING = (Primitive(t) for t in PRIMITIVES[4:])


class Named(AvroSchema):
    def __init__(self, name, namespace=None, aliases=()):
        self.name = name
        self.namespace = namespace or None
        self.aliases = tuple(aliases)

    @property
    def fullname(self):
        return f"{self.namespace}.{self.name}" if self.namespace else self.name

    def __repr__(self):
        return f"{type(self).__name__}({self.fullname})"


class Field:
    __slots__ = ("name", "type", "default", "has_default", "aliases")

    def __init__(self, name, type, default=None, has_default=False, aliases=()):
        self.name = name
        self.type = type
        self.default = default
        self.has_default = has_default
        self.aliases = tuple(aliases)

    def __repr__(self):
        return f"Field({self.name!r}, {self.type!r})"


class Record(Named):
    type = "record"

    def __init__(self, name, namespace=None, fields=(), aliases=()):
        super().__init__(name, namespace, aliases)
        self.fields = list(fields)

    def field(self, name):
        for f in self.fields:
            if f.name == name:
                return f
        return None


class Enum(Named):
    type = "enum"

    def __init__(self, name, symbols, namespace=None, default=None, aliases=()):
        super().__init__(name, namespace, aliases)
        self.symbols = tuple(symbols)
        self.default = default


class Fixed(Named):
    type = "fixed"

    def __init__(self, name, size, namespace=None, aliases=()):
        super().__init__(name, namespace, aliases)
        self.size = size


class Array(AvroSchema):
    type = "array"

    def __init__(self, items):
        self.items = items

    def __repr__(self):
        return f"Array({self.items!r})"


class Map(AvroSchema):
    type = "map"

    def __init__(self, values):
        self.values = values

    def __repr__(self):
        return f"Map({self.values!r})"


class Union(AvroSchema):
    type = "union"

    def __init__(self, branches):
        self.branches = tuple(branches)

    def __repr__(self):
        return f"Union{list(self.branches)!r}"


def branch_key(schema):
    """What makes a union branch distinct: the type name, or the full name of a named type."""
    return schema.fullname if isinstance(schema, Named) else schema.type


def conforms(value, schema):
    """Whether ``value`` can be written under ``schema`` without conversion."""
    t = schema.type
    k = kind(value)
    if t == "null":
        return k == "null"
    if t == "boolean":
        return k == "bool"
    if t == "int":
        return k == "int" and -(1 << 31) <= value < (1 << 31)
    if t == "long":
        return k == "int" and INT64_MIN <= value <= INT64_MAX
    if t == "float":
        if k != "float":
            return False
        try:
            _F32.pack(value)
        except OverflowError:
            return False
        return True
    if t == "double":
        return k == "float"
    if t == "bytes":
        return k == "str" and all(ord(c) < 256 for c in value)
    if t == "string":
        return k == "str"
    if t == "fixed":
        return (k == "str" and len(value) == schema.size
                and all(ord(c) < 256 for c in value))
    if t == "enum":
        return k == "str" and value in schema.symbols
    if t == "array":
        return k == "array" and all(conforms(v, schema.items) for v in value)
    if t == "map":
        return k == "object" and all(conforms(v, schema.values) for v in value.values())
    if t == "record":
        if k != "object" or any(schema.field(n) is None for n in value):
            return False
        for f in schema.fields:
            if f.name in value:
                if not conforms(value[f.name], f.type):
                    return False
            elif not f.has_default:
                return False
        return True
    return any(conforms(value, b) for b in schema.branches)


def default_value(schema, default):
    """Convert a field default from its JSON form to the value a decoder yields.

    Union defaults apply to the first branch; float fields accept integer
    literals; record defaults fill their own missing fields.
    """
    if schema.type == "union":
        schema = schema.branches[0]
    t = schema.type
    k = kind(default)
    if t in ("float", "double") and k == "int":
        default = float(default)
        if t == "float":
            _F32.pack(default)
        return default
    if t == "record" and k == "object":
        out = {}
        for f in schema.fields:
            if f.name in default:
                out[f.name] = default_value(f.type, default[f.name])
            elif f.has_default:
                out[f.name] = default_value(f.type, f.default)
            else:
                raise ValueError(f"record default lacks field {f.name!r}")
        return out
    if t == "array" and k == "array":
        return [default_value(schema.items, v) for v in default]
    if t == "map" and k == "object":
        return {key: default_value(schema.values, v) for key, v in default.items()}
    if not conforms(default, schema):
        raise ValueError(f"default {default!r} does not match {t}")
    return default


class _Parser:
    def __init__(self):
        self.names = {}

    def qualify(self, name, namespace):
        if "." in name or not namespace:
            return name
        return f"{namespace}.{name}"

    def define(self, named, path):
        full = named.fullname
        if full in PRIMITIVES:
            raise SchemaSyntax(f"{full!r} shadows a primitive type", path)
        if full in self.names:
            raise SchemaSyntax(f"type {full!r} is defined twice", path)
        self.names[full] = named

    def name_of(self, node, path, namespace):
        name = node.get("name")
        if not isinstance(name, str):
            raise SchemaSyntax("named type needs a string 'name'", path)
        ns = node.get("namespace", namespace)
        if "." in name:
            ns, _, name = name.rpartition(".")
        for part in (ns.split(".") if ns else []) + [name]:
            if not _NAME_RE.match(part):
                raise SchemaSyntax(f"invalid name {part!r}", path)
        aliases = node.get("aliases", [])
        if not isinstance(aliases, list) or not all(isinstance(a, str) for a in aliases):
            raise SchemaSyntax("'aliases' must be a list of names", path)
        return name, ns, aliases

    def parse(self, node, path, namespace):
        if isinstance(node, str):
            if node in PRIMITIVES:
                return Primitive(node)
            full = self.qualify(node, namespace)
            if full in self.names:
                return self.names[full]
            if node in self.names:
                return self.names[node]
            raise SchemaSyntax(f"unknown type {node!r}", path)
        if isinstance(node, list):
            return self.union(node, path, namespace)
        if not isinstance(node, dict):
            raise SchemaSyntax(f"a schema cannot be {kind(node)}", path)
        t = node.get("type")
        if t is None:
            raise SchemaSyntax("missing 'type'", path)
        if isinstance(t, (list, dict)) or (isinstance(t, str) and t not in (
                "record", "error", "enum", "fixed", "array", "map")):
            # {"type": "int"} and {"type": {...}} wrap another schema
            return self.parse(t, f"{path}.type", namespace)
        if t in ("record", "error"):
            return self.record(node, path, namespace)
        if t == "enum":
            return self.enum(node, path, namespace)
        if t == "fixed":
            name, ns, aliases = self.name_of(node, path, namespace)
            size = node.get("size")
            if isinstance(size, bool) or not isinstance(size, int) or size < 0:
                raise SchemaSyntax("'size' must be a non-negative integer", path)
            fixed = Fixed(name, size, ns, aliases)
            self.define(fixed, path)
            return fixed
        if t == "array":
            if "items" not in node:
                raise SchemaSyntax("array needs 'items'", path)
            return Array(self.parse(node["items"], f"{path}.items", namespace))
        if t == "map":
            if "values" not in node:
                raise SchemaSyntax("map needs 'values'", path)
            return Map(self.parse(node["values"], f"{path}.values", namespace))
        raise SchemaSyntax(f"'type' must be a string, list or object, not {t!r}", path)

    def union(self, node, path, namespace):
        branches = []
        seen = set()
        for i, b in enumerate(node):
            schema = self.parse(b, f"{path}[{i}]", namespace)
            if schema.type == "union":
                raise SchemaSyntax("unions may not directly contain unions", f"{path}[{i}]")
            key = branch_key(schema)
            if key in seen:
                raise SchemaSyntax(f"duplicate union branch {key!r}", f"{path}[{i}]")
            seen.add(key)
            branches.append(schema)
        return Union(branches)

    def record(self, node, path, namespace):
        name, ns, aliases = self.name_of(node, path, namespace)
        rec = Record(name, ns, aliases=aliases)
        self.define(rec, path)
        fields = node.get("fields")
        if not isinstance(fields, list):
            raise SchemaSyntax("record needs a 'fields' list", path)
        seen = set()
        for i, fnode in enumerate(fields):
            fpath = f"{path}.fields[{i}]"
            if not isinstance(fnode, dict):
                raise SchemaSyntax("a field must be an object", fpath)
            fname = fnode.get("name")
            if not isinstance(fname, str) or not _NAME_RE.match(fname):
                raise SchemaSyntax(f"invalid field name {fname!r}", fpath)
            if fname in seen:
                raise SchemaSyntax(f"duplicate field {fname!r}", fpath)
            seen.add(fname)
            if "type" not in fnode:
                raise SchemaSyntax("field needs a 'type'", fpath)
            ftype = self.parse(fnode["type"], f"{fpath}.type", ns)
            has_default = "default" in fnode
            default = fnode.get("default")
            if has_default:
                try:
                    default_value(ftype, default)
                except (ValueError, OverflowError, TypeError) as exc:
                    raise SchemaSyntax(f"bad default: {exc}", f"{fpath}.default") from None
            rec.fields.append(Field(fname, ftype, default, has_default,
                                    fnode.get("aliases", ())))
        return rec

    def enum(self, node, path, namespace):
        name, ns, aliases = self.name_of(node, path, namespace)
        symbols = node.get("symbols")
        if not isinstance(symbols, list) or not all(
                isinstance(s, str) and _NAME_RE.match(s) for s in symbols):
            raise SchemaSyntax("enum needs a list of symbol names", path)
        if len(set(symbols)) != len(symbols):
            raise SchemaSyntax("enum symbols must be unique", path)
        default = node.get("default")
        if default is not None and default not in symbols:
            raise SchemaSyntax(f"enum default {default!r} is not a symbol", path)
        enum = Enum(name, symbols, ns, default, aliases)
        self.define(enum, path)
        return enum


def parse_schema(document):
    """Parse a schema given as a JSON value (already decoded from text)."""
    return _Parser().parse(document, "$", None)

