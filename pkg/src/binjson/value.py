"""JSON document model shared by all codecs.

Documents are plain Python values:

* ``None``, ``True``/``False``
* ``int`` for integers in the signed 64-bit range (never ``bool``)
* ``float`` for finite binary64 reals
* ``str`` for text
* ``list`` for arrays
* ``dict`` for objects; insertion order is the wire order

``int`` and ``float`` are distinct kinds: ``1`` and ``1.0`` are different
documents, and so are two objects holding the same entries in a different
order. :func:`canon_eq` implements that comparison; ``==`` does not.
"""

import json
import math
from importlib import resources

from .errors import DuplicateKeyError, JsonSyntaxError, RangeError

INT64_MIN = -(1 << 63)
INT64_MAX = (1 << 63) - 1


def _pairs_to_dict(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise DuplicateKeyError(key)
        obj[key] = value
    return obj


def _parse_int(token):
    n = int(token)
    if not INT64_MIN <= n <= INT64_MAX:
        raise RangeError(f"integer {token} is outside the signed 64-bit range")
    return n


def _parse_float(token):
    x = float(token)
    if math.isinf(x):
        raise RangeError(f"number {token} overflows binary64")
    return x


def _reject_constant(name):
    raise ValueError(f"{name} is not valid JSON")


def _check_text(value):
    # json.loads happily decodes lone surrogate escapes like "\ud800"
    stack = [value]
    while stack:
        v = stack.pop()
        if isinstance(v, str):
            v.encode("utf-8")
        elif isinstance(v, list):
            stack.extend(v)
        elif isinstance(v, dict):
            stack.extend(v.keys())
            stack.extend(v.values())


def parse_json(text):
    """Parse RFC 8259 JSON text into the document model.

    Raises :class:`JsonSyntaxError` on malformed input,
    :class:`DuplicateKeyError` when an object repeats a key and
    :class:`RangeError` for integers outside signed 64 bits.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise JsonSyntaxError("input is not UTF-8", exc.start) from None
    try:
        value = json.loads(
            text,
            object_pairs_hook=_pairs_to_dict,
            parse_int=_parse_int,
            parse_float=_parse_float,
            parse_constant=_reject_constant,
        )
    except json.JSONDecodeError as exc:
        raise JsonSyntaxError(exc.msg, exc.pos) from None
    except (RangeError, DuplicateKeyError):
        raise
    except ValueError as exc:
        raise JsonSyntaxError(str(exc), 0) from None
    try:
        _check_text(value)
    except UnicodeEncodeError:
        raise JsonSyntaxError("string contains an unpaired surrogate", 0) from None
    return value


def dump_json(value, indent=None):
    """Serialize a document back to JSON text, keeping key order."""
    return json.dumps(value, ensure_ascii=False, indent=indent,
                      allow_nan=False)


def kind(value):
    """Name of the document variant ``value`` belongs to."""
    if value is None:
        return "null"
    t = type(value)
    if t is bool:
        return "bool"
    if t is int:
        return "int"
    if t is float:
        return "float"
    if t is str:
        return "str"
    if t is list:
        return "array"
    if t is dict:
        return "object"
    raise TypeError(f"{t.__name__} is not a JSON document value")


def canon_eq(a, b):
    """Structural equality that separates ints from floats and respects key order."""
    ka, kb = kind(a), kind(b)
    if ka != kb:
        return False
    if ka == "float":
        return a == b and math.copysign(1.0, a) == math.copysign(1.0, b)
    if ka == "array":
        return len(a) == len(b) and all(canon_eq(x, y) for x, y in zip(a, b))
    if ka == "object":
        if len(a) != len(b):
            return False
        for (k1, v1), (k2, v2) in zip(a.items(), b.items()):
            if k1 != k2 or not canon_eq(v1, v2):
                return False
        return True
    return a == b


def validate(value):
    """Raise if ``value`` is not a well-formed document."""
    k = kind(value)
    if k == "int" and not INT64_MIN <= value <= INT64_MAX:
        raise RangeError(f"integer {value} is outside the signed 64-bit range")
    if k == "float" and not math.isfinite(value):
        raise RangeError("NaN and infinities are not JSON values")
    if k == "array":
        for item in value:
            validate(item)
    elif k == "object":
        for key, item in value.items():
            if type(key) is not str:
                raise TypeError(f"object key {key!r} is not a string")
            validate(item)


def _data_path(name):
    return resources.files("binjson").joinpath("data", name)


def canonical_doc_path():
    """Location of the bundled test document (``canonical.json``)."""
    return _data_path("canonical.json")


def load_canonical_doc():
    """The reference test document used for the golden byte counts."""
    return parse_json(canonical_doc_path().read_text(encoding="utf-8"))


def load_fixture(name):
    """Raw bytes of a bundled fixture file, e.g. ``canonical.cbor``."""
    return _data_path(name).read_bytes()
