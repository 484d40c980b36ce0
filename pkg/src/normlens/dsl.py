"""Line-oriented schema description language and report rendering.

Grammar ('#' starts a comment, blank lines are skipped):

    schema-file   := schema-decl relation-decl+ fd-decl*
    schema-decl   := "schema" IDENT
    relation-decl := "relation" IDENT "(" attr-list ")" "key" "(" ident-list ")"
    attr-list     := attr ("," attr)*        attr := IDENT ["*"]   '*' = non-atomic
    fd-decl       := "fd" IDENT ":" ident-list "->" ident-list
    ident-list    := IDENT ("," IDENT)*
    IDENT         := [A-Za-z_][A-Za-z0-9_]*

The parser recovers per line and reports every diagnostic with a 1-based
line and column. Semantic rules are delegated to ``validate_schema``; its
findings come back as diagnostics anchored to the declaration that caused
them.

Reports render as text (schema totals as equations, e.g. "2.71 + 4 = 6.71")
or as a stable JSON tree in which every exact rational appears as
``{"num": ..., "den": ..., "display": ...}``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .classify import ClassificationMode, FDPartition
from .completeness import RelationNC, SchemaNC, truncated
from .model import (
    AttributeSpec,
    FunctionalDependency,
    RelationSchema,
    Schema,
    Severity,
    validate_schema,
)
from .transform import TransformTrace

_TOKEN_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|->|[(),:*]|\S")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class SourceDocument:
    """Input text plus where it came from (file path or '<stdin>')."""

    text: str
    provenance: str = "<stdin>"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    severity: Severity
    message: str
    code: str = "SYNTAX"

    def render(self, provenance: str = "<input>") -> str:
        return f"{provenance}:{self.line}:{self.column}: {self.severity.value}: {self.message}"


@dataclass(frozen=True)
class ParseResult:
    """Outcome of a parse: a schema unless any error-severity diagnostic exists."""

    schema: Schema | None
    diagnostics: tuple[ParseDiagnostic, ...]
    provenance: str = "<stdin>"

    @property
    def ok(self) -> bool:
        return not any(d.severity is Severity.ERROR for d in self.diagnostics)

    @property
    def syntax_errors(self) -> tuple[ParseDiagnostic, ...]:
        return tuple(
            d
            for d in self.diagnostics
            if d.code == "SYNTAX" and d.severity is Severity.ERROR
        )


class _LineError(Exception):
    """Abort parsing of the current line; the diagnostic is already recorded."""


class _LineParser:
    def __init__(self, sink: list[ParseDiagnostic], line_no: int, content: str):
        self.sink = sink
        self.line_no = line_no
        self.tokens = [(m.group(), m.start() + 1) for m in _TOKEN_RE.finditer(content)]
        self.pos = 0
        self.end_col = len(content.rstrip()) + 1

    def peek(self) -> str | None:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def next_col(self) -> int:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return self.end_col

    def take(self) -> tuple[str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str, column: int | None = None) -> None:
        self.sink.append(
            ParseDiagnostic(
                self.line_no,
                self.next_col() if column is None else column,
                Severity.ERROR,
                message,
            )
        )
        raise _LineError

    def warn(self, message: str, column: int) -> None:
        self.sink.append(
            ParseDiagnostic(self.line_no, column, Severity.WARNING, message)
        )

    def expect(self, token: str) -> None:
        if self.peek() != token:
            self.error(f"expected '{token}'")
        self.take()

    def expect_ident(self, what: str) -> str:
        text = self.peek()
        if text is None or not _IDENT_RE.match(text):
            self.error(f"expected {what}")
        return self.take()[0]

    def expect_end(self, context: str) -> None:
        if self.pos < len(self.tokens):
            self.error(f"unexpected text after {context}")

    def ident_list(self, what: str) -> list[str]:
        # "empty determinant list" / "empty dependent list" / "empty key list"
        text = self.peek()
        if text is None or not _IDENT_RE.match(text):
            self.error(f"empty {what} list")
        names: list[str] = []
        while True:
            col = self.next_col()
            name = self.expect_ident(f"{what} attribute")
            if name in names:
                self.warn(f"duplicate attribute {name!r} in {what} list (ignored)", col)
            else:
                names.append(name)
            if self.peek() != ",":
                return names
            self.take()


def parse_schema(source: SourceDocument | str) -> ParseResult:
    """Parse a schema document; diagnostics cover syntax and validation.

    Returns a ParseResult whose schema is None when any error was found.
    Warnings (for example a primary key that is not a superkey) leave the
    schema usable.
    """
    doc = SourceDocument(source) if isinstance(source, str) else source
    diagnostics: list[ParseDiagnostic] = []
    schema_name: str | None = None
    schema_anchor = (1, 1)
    relations: list[RelationSchema] = []
    fds: list[FunctionalDependency] = []
    anchors: dict[tuple[str, str], tuple[int, int]] = {}

    for line_no, raw in enumerate(doc.text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        lp = _LineParser(diagnostics, line_no, content)
        head, head_col = lp.take()
        try:
            if head == "schema":
                if schema_name is not None:
                    lp.error("duplicate schema declaration", head_col)
                name = lp.expect_ident("schema name")
                lp.expect_end("schema declaration")
                schema_name = name
                schema_anchor = (line_no, head_col)
            elif head == "relation":
                if schema_name is None:
                    lp.error("expected 'schema' declaration first", head_col)
                if fds:
                    lp.error(
                        "relation declarations must come before fd declarations",
                        head_col,
                    )
                name_col = lp.next_col()
                name = lp.expect_ident("relation name")
                lp.expect("(")
                attrs: list[AttributeSpec] = []
                if lp.peek() == ")":
                    lp.error("empty attribute list")
                while True:
                    attr = lp.expect_ident("attribute name")
                    atomic = True
                    if lp.peek() == "*":
                        lp.take()
                        atomic = False
                    attrs.append(AttributeSpec(attr, atomic))
                    if lp.peek() != ",":
                        break
                    lp.take()
                lp.expect(")")
                keyword = lp.peek()
                if keyword != "key":
                    lp.error("expected 'key'")
                lp.take()
                lp.expect("(")
                key = lp.ident_list("key")
                lp.expect(")")
                lp.expect_end("relation declaration")
                relations.append(RelationSchema(name, tuple(attrs), tuple(key)))
                anchors[("relation", name)] = (line_no, name_col)
            elif head == "fd":
                if schema_name is None:
                    lp.error("expected 'schema' declaration first", head_col)
                label_col = lp.next_col()
                label = lp.expect_ident("fd label")
                lp.expect(":")
                determinant = lp.ident_list("determinant")
                lp.expect("->")
                dependents = lp.ident_list("dependent")
                lp.expect_end("fd declaration")
                fds.append(
                    FunctionalDependency(label, tuple(determinant), tuple(dependents))
                )
                anchors[("fd", label)] = (line_no, label_col)
            else:
                lp.error(
                    f"expected 'schema', 'relation' or 'fd', got {head!r}", head_col
                )
        except _LineError:
            continue

    if schema_name is None:
        diagnostics.append(
            ParseDiagnostic(1, 1, Severity.ERROR, "missing schema declaration")
        )
    elif not relations:
        diagnostics.append(
            ParseDiagnostic(
                schema_anchor[0],
                schema_anchor[1],
                Severity.ERROR,
                "schema declares no relations",
            )
        )

    if any(d.severity is Severity.ERROR for d in diagnostics):
        return ParseResult(None, tuple(diagnostics), doc.provenance)

    schema = Schema(schema_name or "", tuple(relations), tuple(fds))
    report = validate_schema(schema)
    for violation in report.violations:
        anchor = schema_anchor
        if violation.fd_label is not None:
            anchor = anchors.get(("fd", violation.fd_label), anchor)
        elif violation.relation is not None:
            anchor = anchors.get(("relation", violation.relation), anchor)
        diagnostics.append(
            ParseDiagnostic(
                anchor[0],
                anchor[1],
                violation.severity,
                violation.message,
                code=violation.code,
            )
        )
    return ParseResult(
        schema if report.ok else None, tuple(diagnostics), doc.provenance
    )


def emit_schema(schema: Schema) -> str:
    """Render a schema back into the DSL; parse(emit(s)) == s for valid s."""
    lines = [f"schema {schema.name}"]
    for rel in schema.relations:
        attrs = ", ".join(
            spec.name if spec.atomic else f"{spec.name}*" for spec in rel.attributes
        )
        lines.append(
            f"relation {rel.name}({attrs}) key({', '.join(rel.primary_key)})"
        )
    for fd in schema.fds:
        lines.append(
            f"fd {fd.label}: {', '.join(fd.determinant)} -> {', '.join(fd.dependents)}"
        )
    return "\n".join(lines) + "\n"


# --- report rendering -------------------------------------------------------


def _rational(value: Fraction) -> dict[str, Any]:
    return {
        "num": value.numerator,
        "den": value.denominator,
        "display": truncated(value),
    }


def _labels(fds: tuple[FunctionalDependency, ...]) -> str:
    return ", ".join(fd.label for fd in fds) or "(none)"


def _term(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else truncated(value)


def _equation(nc: SchemaNC) -> str:
    if len(nc.per_relation) < 2:
        return nc.total_display
    terms = " + ".join(_term(r.nc) for r in nc.per_relation)
    return f"{terms} = {nc.total_display}"


def _relation_dict(rel: RelationSchema) -> dict[str, Any]:
    return {
        "name": rel.name,
        "attributes": [
            {"name": spec.name, "atomic": spec.atomic} for spec in rel.attributes
        ],
        "key": list(rel.primary_key),
    }


def _schema_dict(schema: Schema) -> dict[str, Any]:
    return {
        "name": schema.name,
        "relations": [_relation_dict(rel) for rel in schema.relations],
        "fds": [
            {
                "label": fd.label,
                "determinant": list(fd.determinant),
                "dependents": list(fd.dependents),
            }
            for fd in schema.fds
        ],
    }


def _partition_dict(partition: FDPartition) -> dict[str, Any]:
    return {
        "relation": partition.relation_name,
        "preventing": [fd.label for fd in partition.preventing],
        "non_preventing": [fd.label for fd in partition.non_preventing],
        "completeness_attributes": sorted(partition.completeness_attributes),
        "preventing_attributes": sorted(partition.preventing_attributes),
        "counts": {
            "completeness": partition.completeness_count,
            "preventing": partition.preventing_count,
            "total": partition.total_attributes,
        },
    }


def _relation_nc_dict(rnc: RelationNC) -> dict[str, Any]:
    return {
        "name": rnc.relation_name,
        "normal_form": {
            "label": rnc.normal_form.label,
            "level": rnc.normal_form.value,
        },
        "partition": _partition_dict(rnc.partition),
        "membership": _rational(rnc.membership),
        "nc": _rational(rnc.nc),
    }


def _schema_nc_dict(nc: SchemaNC) -> dict[str, Any]:
    return {
        "schema": nc.schema_name,
        "mode": nc.mode.value,
        "relations": [_relation_nc_dict(r) for r in nc.per_relation],
        "total": _rational(nc.total),
    }


def _text_schema_nc(nc: SchemaNC) -> list[str]:
    suffix = " [strict mode]" if nc.mode is ClassificationMode.STRICT else ""
    lines = [f"schema {nc.schema_name}{suffix}"]
    for rnc in nc.per_relation:
        part = rnc.partition
        lines += [
            "",
            f"relation {rnc.relation_name}: {rnc.normal_form.label} (N={rnc.normal_form.value})",
            f"  preventing FDs ({len(part.preventing)}): {_labels(part.preventing)}",
            f"  non-preventing FDs ({len(part.non_preventing)}): {_labels(part.non_preventing)}",
            f"  attributes: completeness {part.completeness_count},"
            f" preventing {part.preventing_count}, total {part.total_attributes}",
            f"  membership x = {truncated(rnc.membership)} (exact {rnc.membership})",
            f"  NC = {rnc.nc_display} (exact {rnc.nc})",
        ]
    lines += ["", _equation(nc)]
    return lines


def _text_partition(partition: FDPartition) -> list[str]:
    completeness = ", ".join(sorted(partition.completeness_attributes)) or "(none)"
    prevented = ", ".join(sorted(partition.preventing_attributes)) or "(none)"
    return [
        f"relation {partition.relation_name}",
        f"  preventing FDs ({len(partition.preventing)}): {_labels(partition.preventing)}",
        f"  non-preventing FDs ({len(partition.non_preventing)}): {_labels(partition.non_preventing)}",
        f"  completeness attributes ({partition.completeness_count}): {completeness}",
        f"  preventing attributes ({partition.preventing_count}): {prevented}",
        f"  total attributes: {partition.total_attributes}",
    ]


def _text_trace(trace: TransformTrace, dsl_snapshots: bool) -> list[str]:
    suffix = " [strict mode]" if trace.initial_nc.mode is ClassificationMode.STRICT else ""
    lines = [
        f"schema {trace.initial.name}: normalization trace{suffix}",
        f"initial NC: {_equation(trace.initial_nc)}",
    ]
    for number, step in enumerate(trace.steps, 1):
        determinant = ", ".join(step.new_relation.primary_key)
        lines += [
            "",
            f"step {number}: {step.source_name}, moved"
            f" {', '.join(step.moved_fd_labels)} (determinant {determinant})",
            f"  new relation:     {step.new_relation.heading()}",
            f"  reduced relation: {step.reduced_relation.heading()}",
            f"  NC after: {_equation(step.nc_after)}",
        ]
        if not step.new_relation_bcnf:
            lines.append("  note: new relation is not yet in BCNF and will be split again")
        if dsl_snapshots:
            lines.append(f"  schema after step {number}:")
            lines += [
                f"    {text}" for text in emit_schema(step.schema_after).splitlines()
            ]
    lines += [
        "",
        f"final NC: {_equation(trace.final_nc)}",
        f"unpreserved FDs: {', '.join(trace.unpreserved_fd_labels) or '(none)'}",
    ]
    return lines


def _trace_dict(trace: TransformTrace) -> dict[str, Any]:
    return {
        "schema": trace.initial.name,
        "mode": trace.initial_nc.mode.value,
        "initial": _schema_dict(trace.initial),
        "initial_nc": _schema_nc_dict(trace.initial_nc),
        "steps": [
            {
                "source": step.source_name,
                "moved_fds": list(step.moved_fd_labels),
                "new_relation_bcnf": step.new_relation_bcnf,
                "new_relation": _relation_dict(step.new_relation),
                "reduced_relation": _relation_dict(step.reduced_relation),
                "schema_after": _schema_dict(step.schema_after),
                "nc_before": _schema_nc_dict(step.nc_before),
                "nc_after": _schema_nc_dict(step.nc_after),
            }
            for step in trace.steps
        ],
        "final": _schema_dict(trace.final),
        "final_nc": _schema_nc_dict(trace.final_nc),
        "unpreserved_fds": list(trace.unpreserved_fd_labels),
    }


def emit_report(
    report: SchemaNC | TransformTrace | FDPartition,
    format: str = "text",
    *,
    dsl_snapshots: bool = False,
) -> str:
    """Render a report as human text or as a byte-stable structured JSON tree.

    ``dsl_snapshots`` adds the schema after every step, in DSL form, to the
    text rendering of a trace (the structured form always embeds schemas).
    """
    if format not in ("text", "structured"):
        raise ValueError(f"unknown report format {format!r}")
    if format == "structured":
        if isinstance(report, SchemaNC):
            payload: dict[str, Any] = {"kind": "schema_nc", **_schema_nc_dict(report)}
        elif isinstance(report, TransformTrace):
            payload = {"kind": "transform_trace", **_trace_dict(report)}
        elif isinstance(report, FDPartition):
            payload = {"kind": "fd_partition", **_partition_dict(report)}
        else:
            raise TypeError(f"cannot render {type(report).__name__} as a report")
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    if isinstance(report, SchemaNC):
        lines = _text_schema_nc(report)
    elif isinstance(report, TransformTrace):
        lines = _text_trace(report, dsl_snapshots)
    elif isinstance(report, FDPartition):
        lines = _text_partition(report)
    else:
        raise TypeError(f"cannot render {type(report).__name__} as a report")
    return "\n".join(lines) + "\n"
