"""Command line interface: analyze, normalize, keys, check.

Exit codes: 0 success, 1 parse error, 2 validation error (also: schema that
cannot be decomposed further), 3 candidate-key capacity exceeded, 4 usage
error. Results go to stdout, diagnostics to stderr, so structured output
stays parseable even when warnings are present.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .classify import ClassificationMode
from .completeness import schema_nc
from .dsl import ParseResult, SourceDocument, emit_report, parse_schema
from .errors import CapacityError, DecompositionError
from .fd import DEFAULT_KEY_CAP, candidate_keys, project_fds
from .model import Schema, Severity, normalize_fds
from .transform import normalize_to_bcnf

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_USAGE = 4


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "input",
        nargs="?",
        default="-",
        help="schema file in the normlens DSL ('-' or omitted: read stdin)",
    )
    parser.add_argument(
        "--mode",
        choices=[m.value for m in ClassificationMode],
        default=ClassificationMode.PRIMARY.value,
        help="judge partial/transitive dependencies against the declared"
        " primary key (primary, default) or every candidate key (strict)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="output rendering (default: text)",
    )
    parser.add_argument(
        "--key-cap",
        type=int,
        default=DEFAULT_KEY_CAP,
        metavar="N",
        help=f"refuse candidate-key search above N attributes (default {DEFAULT_KEY_CAP})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="normlens",
        description="Score relational schemas by normalization completeness"
        " and decompose them to BCNF.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    analyze = sub.add_parser(
        "analyze", help="classify, partition and score every relation"
    )
    _add_common(analyze)

    normalize = sub.add_parser(
        "normalize", help="decompose until every relation is in BCNF"
    )
    _add_common(normalize)
    normalize.add_argument(
        "--trace",
        action="store_true",
        help="include every intermediate schema in DSL form (text output)",
    )

    keys = sub.add_parser("keys", help="list candidate keys per relation")
    _add_common(keys)

    check = sub.add_parser("check", help="parse and validate only")
    _add_common(check)

    return parser


def _read_input(target: str) -> tuple[str, str]:
    if target == "-":
        return sys.stdin.read(), "<stdin>"
    return Path(target).read_text(encoding="utf-8"), target


def _keys_report(schema: Schema, key_cap: int, format: str) -> str:
    normalized = normalize_fds(schema.fds)
    rows = [
        (rel, candidate_keys(rel, project_fds(normalized, rel.attribute_set), cap=key_cap))
        for rel in schema.relations
    ]
    if format == "structured":
        payload = {
            "kind": "candidate_keys",
            "schema": schema.name,
            "relations": [
                {"name": rel.name, "keys": [sorted(key) for key in keys]}
                for rel, keys in rows
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    lines = [f"schema {schema.name}"]
    for rel, keys in rows:
        lines.append("")
        lines.append(f"relation {rel.name}: {len(keys)} candidate key(s)")
        lines += [f"  ({', '.join(sorted(key))})" for key in keys]
    return "\n".join(lines) + "\n"


def _run_check(result: ParseResult, format: str) -> None:
    if format == "structured":
        payload = {
            "kind": "check",
            "ok": result.ok,
            "schema": result.schema.name if result.schema else None,
            "diagnostics": [
                {
                    "line": d.line,
                    "column": d.column,
                    "severity": d.severity.value,
                    "code": d.code,
                    "message": d.message,
                }
                for d in result.diagnostics
            ],
        }
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return
    if result.ok and result.schema is not None:
        schema = result.schema
        warnings = sum(1 for d in result.diagnostics if d.severity is Severity.WARNING)
        note = f", {warnings} warning(s)" if warnings else ""
        sys.stdout.write(
            f"ok: {schema.name}: {len(schema.relations)} relation(s),"
            f" {len(schema.fds)} fd(s){note}\n"
        )
    else:
        errors = sum(1 for d in result.diagnostics if d.severity is Severity.ERROR)
        sys.stdout.write(f"invalid: {errors} error(s)\n")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text, provenance = _read_input(args.input)
    except OSError as exc:
        print(f"normlens: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    result = parse_schema(SourceDocument(text, provenance))
    for diagnostic in result.diagnostics:
        print(diagnostic.render(provenance), file=sys.stderr)

    syntax_failed = bool(result.syntax_errors)
    if args.command == "check":
        _run_check(result, args.format)
        if syntax_failed:
            return EXIT_PARSE
        return EXIT_OK if result.ok else EXIT_VALIDATION
    if syntax_failed:
        return EXIT_PARSE
    if result.schema is None:
        return EXIT_VALIDATION

    mode = ClassificationMode(args.mode)
    try:
        if args.command == "analyze":
            report = schema_nc(result.schema, mode, key_cap=args.key_cap)
            sys.stdout.write(emit_report(report, args.format))
        elif args.command == "normalize":
            trace = normalize_to_bcnf(result.schema, mode, key_cap=args.key_cap)
            sys.stdout.write(
                emit_report(trace, args.format, dsl_snapshots=args.trace)
            )
        elif args.command == "keys":
            sys.stdout.write(_keys_report(result.schema, args.key_cap, args.format))
    except CapacityError as exc:
        print(f"normlens: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DecompositionError as exc:
        print(f"normlens: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
