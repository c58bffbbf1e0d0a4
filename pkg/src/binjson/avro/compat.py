"""Schema-evolution compatibility classification.

A schema pair is backward compatible when data written with the old schema
can be read with the new one, forward compatible when data written with the
new schema can be read with the old one, and fully compatible when both
hold. The check is static and conservative: a writer union is only readable
by a reader union, because a plain reader cannot accept every branch the
writer may pick.
"""

import enum
from dataclasses import dataclass, field

from ..errors import ResolutionError
from .schema import Named

_PROMOTIONS = {("int", "long"), ("int", "float"), ("int", "double"),
               ("long", "float"), ("long", "double"), ("float", "double")}


class Level(enum.Enum):
    FULL = "Full"
    BACKWARD = "Backward"
    FORWARD = "Forward"
    INCOMPATIBLE = "Incompatible"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CompatibilityVerdict:
    level: Level
    reasons: tuple = field(default=())

    @property
    def backward(self):
        return self.level in (Level.FULL, Level.BACKWARD)

    @property
    def forward(self):
        return self.level in (Level.FULL, Level.FORWARD)

    def __str__(self):
        lines = [str(self.level)]
        lines += [f"  {r}" for r in self.reasons]
        return "\n".join(lines)


def _names_match(w, r):
    return w.name == r.name or w.name in r.aliases or w.fullname in r.aliases


class _Checker:
    def __init__(self):
        self.reasons = []
        self.assumed = set()

    def fail(self, detail, path):
        self.reasons.append(ResolutionError(detail, path))
        return False

    def check(self, w, r, path):
        if isinstance(w, Named) and isinstance(r, Named):
            key = (id(w), id(r))
            if key in self.assumed:
                return True
            self.assumed.add(key)
        if r.type == "union":
            if w.type == "union":
                ok = True
                for i, wb in enumerate(w.branches):
                    if not self.any_branch(wb, r, f"{path}<{i}>"):
                        ok = False
                return ok
            return self.any_branch(w, r, path)
        if w.type == "union":
            return self.fail("a writer union cannot be read by a non-union reader", path)
        if w.type != r.type:
            if (w.type, r.type) in _PROMOTIONS:
                return True
            return self.fail(f"writer {w.type} cannot be read as {r.type}", path)
        t = w.type
        if isinstance(w, Named) and not _names_match(w, r):
            return self.fail(f"name {w.fullname} does not match {r.fullname}", path)
        if t == "fixed" and w.size != r.size:
            return self.fail(f"fixed size {w.size} differs from {r.size}", path)
        if t == "enum":
            missing = [s for s in w.symbols if s not in r.symbols]
            if missing and r.default is None:
                return self.fail(f"reader lacks symbols {missing}", path)
            return True
        if t == "array":
            return self.check(w.items, r.items, f"{path}[]")
        if t == "map":
            return self.check(w.values, r.values, f"{path}{{}}")
        if t == "record":
            ok = True
            for rf in r.fields:
                wf = next((f for f in w.fields
                           if f.name == rf.name or f.name in rf.aliases), None)
                fpath = f"{path}.{rf.name}"
                if wf is None:
                    if not rf.has_default:
                        ok = self.fail("reader field is absent from the writer and has no default",
                                       fpath)
                elif not self.check(wf.type, rf.type, fpath):
                    ok = False
            return ok
        return True

    def any_branch(self, w, union, path):
        mark = len(self.reasons)
        for rb in union.branches:
            if self.check(w, rb, path):
                del self.reasons[mark:]
                return True
        del self.reasons[mark:]
        return self.fail(f"no reader branch accepts writer {w.type}", path)


def can_read(writer, reader):
    """``(ok, reasons)`` for reading data written with ``writer`` using ``reader``."""
    c = _Checker()
    ok = c.check(writer, reader, "$")
    return ok, tuple(c.reasons)


def check_compat(old, new):
    backward, why_not_back = can_read(old, new)
    forward, why_not_fwd = can_read(new, old)
    reasons = tuple(ResolutionError(f"backward: {e.detail}", e.path) for e in why_not_back)
    reasons += tuple(ResolutionError(f"forward: {e.detail}", e.path) for e in why_not_fwd)
    if backward and forward:
        level = Level.FULL
    elif backward:
        level = Level.BACKWARD
    elif forward:
        level = Level.FORWARD
    else:
        level = Level.INCOMPATIBLE
    return CompatibilityVerdict(level, reasons)


def combine(verdicts):
    """Level that holds for every verdict at once, for transitive checks."""
    verdicts = list(verdicts)
    backward = all(v.backward for v in verdicts)
    forward = all(v.forward for v in verdicts)
    reasons = tuple(r for v in verdicts for r in v.reasons)
    if backward and forward:
        return CompatibilityVerdict(Level.FULL, reasons)
    if backward:
        return CompatibilityVerdict(Level.BACKWARD, reasons)
    if forward:
        return CompatibilityVerdict(Level.FORWARD, reasons)
    return CompatibilityVerdict(Level.INCOMPATIBLE, reasons)


def check_transitive(new, previous):
    """Verdict of ``new`` against each schema in ``previous``, in order."""
    return [check_compat(old, new) for old in previous]
