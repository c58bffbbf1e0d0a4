"""Command line: ``binjson convert|inspect|compare|check-compat``.

Exit status: 0 success, 1 codec or JSON error, 2 usage error (including a
missing or unparsable Avro schema). ``check-compat`` exits 0 for Full,
3 for Backward only, 4 for Forward only and 5 for Incompatible.
"""

import argparse
import os
import sys
from pathlib import Path

from . import avro, inspect, smile
from .errors import CodecError, SchemaRequired, SchemaSyntax
from .formats import SCHEMA_LESS, FormatId, annotate, decode, encode
from .value import dump_json, parse_json

EXIT_OK, EXIT_CODEC, EXIT_USAGE = 0, 1, 2
EXIT_BY_LEVEL = {avro.Level.FULL: 0, avro.Level.BACKWARD: 3,
                 avro.Level.FORWARD: 4, avro.Level.INCOMPATIBLE: 5}


class UsageError(Exception):
    pass


def _format_arg(text):
    if text.lower() == "json":
        return "json"
    try:
        return FormatId.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _infer(path, given, flag):
    if given is not None:
        return given
    if path is not None and str(path).lower().endswith(".json"):
        return "json"
    fmt = FormatId.from_extension(path) if path is not None else None
    if fmt is None:
        raise UsageError(f"cannot infer a format from {path!r}; pass {flag}")
    return fmt


def _load_schema(path):
    if path is None:
        return None
    try:
        return avro.parse_schema(parse_json(Path(path).read_bytes()))
    except (ValueError, SchemaSyntax) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _smile_options(args):
    if getattr(args, "smile_profile", None) == "pysmile":
        return smile.PYSMILE_OPTIONS
    return smile.SmileOptions(
        shared_names=not args.smile_no_shared_names,
        shared_values=args.smile_shared_values,
        float_width=32 if args.smile_float32 else 64,
        end_marker=args.smile_end_marker,
    )


def _read_input(path):
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def cmd_convert(args):
    src = _infer(args.input if args.input != "-" else None, args.from_, "--from")
    dst = _infer(args.out, args.to, "--to")
    schema = _load_schema(args.schema)
    reader = _load_schema(args.reader_schema)
    data = _read_input(args.input)
    doc = parse_json(data) if src == "json" else decode(src, data, schema, reader)
    if dst == "json":
        out = (dump_json(doc, indent=args.indent) + "\n").encode("utf-8")
    else:
        out = encode(dst, doc, schema if reader is None else reader, _smile_options(args))
    if args.out:
        Path(args.out).write_bytes(out)
    else:
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    return EXIT_OK


def _use_color(stream):
    return stream.isatty() and "NO_COLOR" not in os.environ


def cmd_inspect(args):
    fmt = _infer(args.input if args.input != "-" else None, args.format, "--format")
    if fmt == "json":
        raise UsageError("inspect works on binary formats, not JSON")
    schema = _load_schema(args.schema)
    if fmt is FormatId.AVRO and schema is None:
        raise SchemaRequired("Avro needs --schema", 0)
    data = _read_input(args.input)
    _, spans, error = annotate(fmt, data, schema)
    sys.stdout.write(inspect.render(data, spans, error, color=_use_color(sys.stdout)))
    return EXIT_CODEC if error else EXIT_OK


def size_table(doc, schema=None, smile_options=smile.PYSMILE_OPTIONS):
    """``[(format title, byte count or error text)]`` sorted by title."""
    formats = list(SCHEMA_LESS) + ([FormatId.AVRO] if schema is not None else [])
    rows = []
    for fmt in formats:
        try:
            rows.append((fmt.title, len(encode(fmt, doc, schema, smile_options))))
        except CodecError as exc:
            rows.append((fmt.title, f"error: {exc.kind}"))
    return sorted(rows)


def cmd_compare(args):
    doc = parse_json(_read_input(args.input))
    schema = _load_schema(args.schema)
    lines = ["format\tbytes"]
    lines += [f"{name}\t{size}" for name, size in size_table(doc, schema, _smile_options(args))]
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_check_compat(args):
    old = _load_schema(args.old)
    new = _load_schema(args.new)
    others = [(p, _load_schema(p)) for p in args.transitive or []]
    verdict = avro.check_compat(old, new)
    if not others:
        print(verdict)
        return EXIT_BY_LEVEL[verdict.level]
    verdicts = [verdict]
    print(f"{args.old}: {verdict}")
    for path, schema in others:
        v = avro.check_compat(schema, new)
        verdicts.append(v)
        print(f"{path}: {v}")
    overall = avro.combine(verdicts)
    print(f"transitive: {overall.level}")
    return EXIT_BY_LEVEL[overall.level]


def _add_smile_flags(p, profile_default):
    g = p.add_argument_group("Smile output")
    g.add_argument("--smile-profile", choices=["default", "pysmile"], default=profile_default,
                   help="pysmile: no back-references, float32 reals (the reference fixture layout)")
    g.add_argument("--smile-shared-values", action="store_true",
                   help="share short string values through back-references")
    g.add_argument("--smile-no-shared-names", action="store_true",
                   help="write every property name literally")
    g.add_argument("--smile-float32", action="store_true",
                   help="write reals as float32 where they fit")
    g.add_argument("--smile-end-marker", action="store_true",
                   help="append the optional 0xff end marker")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="binjson", description="Convert, inspect and compare binary JSON encodings.")
    sub = parser.add_subparsers(dest="command", required=True)
    names = ", ".join(["json"] + [f.key for f in FormatId])

    p = sub.add_parser("convert", help="convert a document between formats")
    p.add_argument("input", help="input file, or - for standard input")
    p.add_argument("--from", dest="from_", type=_format_arg, help=f"input format ({names})")
    p.add_argument("--to", type=_format_arg, help="output format; defaults to the --out extension")
    p.add_argument("--out", "-o", help="output file (default: standard output)")
    p.add_argument("--schema", help="Avro schema (.avsc) for Avro input or output")
    p.add_argument("--reader-schema", help="Avro reader schema used to resolve Avro input")
    p.add_argument("--indent", type=int, default=2, help="indentation of JSON output")
    _add_smile_flags(p, "default")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("inspect", help="annotated hexdump of an encoded document")
    p.add_argument("input")
    p.add_argument("--format", type=_format_arg, help="format of the input")
    p.add_argument("--schema", help="Avro schema for Avro input")
    p.set_defaults(func=cmd_inspect)

    p = sub.add_parser("compare", help="encoded size of a JSON document in every format")
    p.add_argument("input")
    p.add_argument("--schema", help="Avro schema; adds an Avro row")
    _add_smile_flags(p, "pysmile")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check-compat", help="classify an Avro schema change")
    p.add_argument("old", help="schema currently in use")
    p.add_argument("new", help="proposed schema")
    p.add_argument("--transitive", nargs="+", metavar="SCHEMA",
                   help="earlier schemas the new one must also be compatible with")
    p.set_defaults(func=cmd_check_compat)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SchemaRequired) as exc:
        print(f"binjson: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CodecError, ValueError) as exc:
        print(f"binjson: {exc}", file=sys.stderr)
        return EXIT_CODEC
    except OSError as exc:
        print(f"binjson: {exc}", file=sys.stderr)
        return EXIT_CODEC


if __name__ == "__main__":
    sys.exit(main())
