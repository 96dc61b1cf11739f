"""Manchester Syntax frames, laid out one frame entry per line."""

from __future__ import annotations

import re

from .functional import Names, SerializationConfig, Sort, check_declared, literal, prefix_lines
from .owl import (
    RDFS_LABEL,
    AllValuesFrom,
    AnnotationAssertion,
    ClassExpression,
    Declaration,
    DisjointClasses,
    EntityKind,
    EquivalentClasses,
    ExactCardinality,
    FunctionalObjectProperty,
    IntersectionOf,
    Iri,
    Named,
    ObjectPropertyRange,
    Ontology,
    SomeValuesFrom,
    SubClassOf,
    UnionOf,
)

__all__ = ["manchester_tokens", "render_expression", "to_manchester"]

INDENT = "  "

_KIND_RANK = {EntityKind.ANNOTATION_PROPERTY: 0, EntityKind.OBJECT_PROPERTY: 1, EntityKind.CLASS: 2}
_FRAME_KEYWORD = {
    EntityKind.ANNOTATION_PROPERTY: "AnnotationProperty:",
    EntityKind.OBJECT_PROPERTY: "ObjectProperty:",
    EntityKind.CLASS: "Class:",
}


class _Renderer:
    def __init__(self, ont: Ontology, use_labels: bool = False) -> None:
        self.names = Names(ont)
        self.labels: dict[Iri, str] = {}
        if use_labels:
            for ax in ont.axioms:
                if (
                    isinstance(ax, AnnotationAssertion)
                    and ax.annotation.property == RDFS_LABEL
                    and not isinstance(ax.annotation.value, Iri)
                ):
                    self.labels.setdefault(ax.subject, ax.annotation.value.lexical)

    def name(self, iri: Iri) -> str:
        if iri in self.labels:
            return "'" + self.labels[iri].replace("'", "\\'") + "'"
        short = self.names.prefixed(iri)
        if short is None:
            return f"<{iri}>"
        return short[1:] if short.startswith(":") else short

    def primary(self, expr: ClassExpression) -> str:
        text = self.expr(expr)
        return text if isinstance(expr, Named) else f"({text})"

    def expr(self, expr: ClassExpression) -> str:
        if isinstance(expr, Named):
            return self.name(expr.iri)
        if isinstance(expr, SomeValuesFrom):
            return f"{self.name(expr.property)} some {self.primary(expr.filler)}"
        if isinstance(expr, AllValuesFrom):
            return f"{self.name(expr.property)} only {self.primary(expr.filler)}"
        if isinstance(expr, ExactCardinality):
            return f"{self.name(expr.property)} exactly {expr.n} {self.primary(expr.filler)}"
        if isinstance(expr, (IntersectionOf, UnionOf)):
            word = " and " if isinstance(expr, IntersectionOf) else " or "
            parts = [
                f"({self.expr(op)})" if isinstance(op, (IntersectionOf, UnionOf)) else self.expr(op)
                for op in expr.operands
            ]
            return word.join(parts)
        raise TypeError(f"not a class expression: {expr!r}")

    def annotation_value(self, value) -> str:
        return self.name(value) if isinstance(value, Iri) else literal(value, self.names)


def render_expression(expr: ClassExpression, ont: Ontology, use_labels: bool = False) -> str:
    return _Renderer(ont, use_labels).expr(expr)


def _section(title: str, entries: list[str], canonical: bool) -> list[str]:
    if not entries:
        return []
    if canonical:
        entries = sorted(entries)
    return [f"{INDENT}{title}", *(f"{INDENT * 2}{e}" for e in entries)]


def to_manchester(ont: Ontology, cfg: SerializationConfig = SerializationConfig()) -> str:
    check_declared(ont)
    r = _Renderer(ont, cfg.use_labels)
    canonical = cfg.sort is Sort.CANONICAL

    entities: dict[Iri, EntityKind] = {}
    for ax in ont.axioms:
        if isinstance(ax, Declaration):
            entities.setdefault(ax.entity.iri, ax.entity.kind)
    annotations: dict[Iri, list[str]] = {}
    subclass: dict[Iri, list[str]] = {}
    equivalent: dict[Iri, list[str]] = {}
    characteristics: dict[Iri, list[str]] = {}
    ranges: dict[Iri, list[str]] = {}
    general: list[tuple[str, str]] = []

    for ax in ont.axioms:
        if isinstance(ax, AnnotationAssertion):
            text = f"{r.name(ax.annotation.property)} {r.annotation_value(ax.annotation.value)}"
            annotations.setdefault(ax.subject, []).append(text)
        elif isinstance(ax, SubClassOf):
            if not isinstance(ax.sub, Named):
                raise ValueError(f"general subclass axioms have no Manchester frame: {ax!r}")
            subclass.setdefault(ax.sub.iri, []).append(r.expr(ax.sup))
        elif isinstance(ax, EquivalentClasses):
            named = [op for op in ax.operands if isinstance(op, Named)]
            if canonical:
                named.sort(key=lambda n: r.name(n.iri))
            if named:
                owner = named[0]
                rest = [op for op in ax.operands if op != owner]
                equivalent.setdefault(owner.iri, []).extend(r.expr(op) for op in rest)
            else:
                general.append(("EquivalentClasses:", ", ".join(r.primary(op) for op in ax.operands)))
        elif isinstance(ax, DisjointClasses):
            parts = [r.primary(op) for op in ax.operands]
            if canonical:
                parts.sort()
            general.append(("DisjointClasses:", ", ".join(parts)))
        elif isinstance(ax, FunctionalObjectProperty):
            characteristics.setdefault(ax.property, []).append("Functional")
        elif isinstance(ax, ObjectPropertyRange):
            ranges.setdefault(ax.property, []).append(r.expr(ax.range))

    order = list(entities)
    if canonical:
        order.sort(key=lambda iri: (_KIND_RANK[entities[iri]], r.name(iri), str(iri)))
        general.sort()

    lines = [f"Prefix: {name}: <{uri}>" for name, uri in prefix_lines(ont)]
    lines += ["", f"Ontology: <{ont.iri}>"]
    for iri in order:
        kind = entities[iri]
        lines += ["", f"{_FRAME_KEYWORD[kind]} {r.name(iri)}"]
        lines += _section("Annotations:", annotations.get(iri, []), canonical)
        if kind is EntityKind.OBJECT_PROPERTY:
            lines += _section("Characteristics:", characteristics.get(iri, []), canonical)
            lines += _section("Range:", ranges.get(iri, []), canonical)
        elif kind is EntityKind.CLASS:
            lines += _section("SubClassOf:", subclass.get(iri, []), canonical)
            lines += _section("EquivalentTo:", equivalent.get(iri, []), canonical)
    for title, body in general:
        lines += ["", title, f"{INDENT}{body}"]
    return "\n".join(lines) + "\n"


_MTOKEN = re.compile(r"""'(?:[^'\\]|\\.)*'|"(?:[^"\\]|\\.)*"(?:@[\w-]+|\^\^\S+)?|[(),]|[^\s(),]+""")


def manchester_tokens(text: str) -> list[str]:
    """Whitespace-insensitive token stream; comment lines starting with ``;;`` are dropped."""
    kept = [line for line in text.splitlines() if not line.lstrip().startswith(";;")]
    return _MTOKEN.findall("\n".join(kept))
