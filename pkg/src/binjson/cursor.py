"""Sequential byte reader with optional span tracing for the inspector."""

import struct
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidUtf8, Truncated


@dataclass(frozen=True)
class Span:
    """A labeled byte range of an encoded buffer."""

    offset: int
    length: int
    label: str
    decoded: Optional[str] = None

    @property
    def end(self):
        return self.offset + self.length


class ByteCursor:
    """Reads a buffer front to back; every access states its byte order.

    With ``trace=True`` decoders record :class:`Span` objects through
    :meth:`note`, each covering the bytes consumed since the previous note.
    """

    __slots__ = ("data", "pos", "spans", "_mark")

    def __init__(self, data, trace=False):
        self.data = bytes(data)
        self.pos = 0
        self.spans = [] if trace else None
        self._mark = 0

    def __len__(self):
        return len(self.data)

    @property
    def remaining(self):
        return len(self.data) - self.pos

    def at_end(self):
        return self.pos >= len(self.data)

    def peek(self):
        if self.pos >= len(self.data):
            raise Truncated("unexpected end of input", self.pos)
        return self.data[self.pos]

    def byte(self):
        pos = self.pos
        if pos >= len(self.data):
            raise Truncated("unexpected end of input", pos)
        self.pos = pos + 1
        return self.data[pos]

    def read(self, n):
        pos = self.pos
        if n < 0 or pos + n > len(self.data):
            raise Truncated(f"need {n} bytes, {len(self.data) - pos} left", pos)
        self.pos = pos + n
        return self.data[pos:pos + n]

    def unpack(self, fmt):
        """Read and unpack a :class:`struct.Struct`; the format carries endianness."""
        pos = self.pos
        if pos + fmt.size > len(self.data):
            raise Truncated(f"need {fmt.size} bytes, {len(self.data) - pos} left", pos)
        self.pos = pos + fmt.size
        return fmt.unpack_from(self.data, pos)

    def text(self, n):
        start = self.pos
        raw = self.read(n)
        try:
            return raw.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidUtf8(exc.reason, start + exc.start) from None

    def note(self, label, decoded=None):
        if self.spans is None:
            return
        if self.pos > self._mark:
            self.spans.append(Span(self._mark, self.pos - self._mark, label,
                                   decoded))
        self._mark = self.pos


F16 = struct.Struct(">e")
F32 = struct.Struct(">f")
F64 = struct.Struct(">d")


def widen_float(value, fmt):
    """Widen a float decoded from a narrow format to binary64.

    The result is the binary64 nearest to the shortest decimal string that
    round-trips through ``fmt``; a float32 ``-90.0715`` decodes as the
    double ``-90.0715`` rather than ``-90.07150268554688``.
    """
    if value != value or value in (float("inf"), float("-inf")) or value == 0:
        return value
    for digits in range(1, 18):
        text = f"{value:.{digits}g}"
        candidate = float(text)
        try:
            (back,) = fmt.unpack(fmt.pack(candidate))
        except (OverflowError, struct.error):
            continue
        if back == value:
            return candidate
    return value
