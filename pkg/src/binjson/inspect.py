"""Annotated hexdumps: xxd-style rows with the decoder's spans listed under each row."""

_DIM, _CYAN, _RED, _RESET = "\x1b[2m", "\x1b[36m", "\x1b[31m", "\x1b[0m"


def check_coverage(spans, length):
    """Raise ValueError unless ``spans`` are ordered, disjoint and cover ``[0, length)``."""
    pos = 0
    for s in spans:
        if s.offset != pos:
            raise ValueError(f"span {s.label!r} starts at {s.offset}, expected {pos}")
        if s.length <= 0:
            raise ValueError(f"span {s.label!r} is empty")
        pos = s.end
    if pos != length:
        raise ValueError(f"spans cover {pos} of {length} bytes")


def _hex_row(data, start, width=16):
    chunk = data[start:start + width]
    cells = [f"{b:02x}" for b in chunk] + ["  "] * (width - len(chunk))
    half = width // 2
    text = "".join(chr(b) if 0x20 <= b < 0x7F else "." for b in chunk)
    return f"{start:08x}  {' '.join(cells[:half])}  {' '.join(cells[half:])}  |{text}|"


def render(data, spans, error=None, color=False, width=16):
    """Text dump of ``data``; each span is printed under the row holding its first byte."""
    def paint(code, s):
        return f"{code}{s}{_RESET}" if color else s

    lines = []
    ix = 0
    for row in range(0, max(len(data), 1), width):
        if row < len(data):
            lines.append(_hex_row(data, row, width))
        while ix < len(spans) and spans[ix].offset < row + width:
            s = spans[ix]
            where = paint(_DIM, f"{s.offset:>8x} +{s.length:<3}")
            note = f"  {paint(_CYAN, s.label)}"
            if s.decoded is not None:
                note += f"  {s.decoded}"
            lines.append(f"  {where}{note}")
            ix += 1
    if error is not None:
        lines.append(paint(_RED, f"error: {error}"))
    return "\n".join(lines) + "\n"
