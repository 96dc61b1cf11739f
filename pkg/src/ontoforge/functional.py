"""OWL Functional Syntax: deterministic writer and a reader for the subset it emits."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .owl import (
    AllValuesFrom,
    Annotation,
    AnnotationAssertion,
    Axiom,
    ClassExpression,
    Declaration,
    DisjointClasses,
    Entity,
    EntityKind,
    EquivalentClasses,
    ExactCardinality,
    FunctionalObjectProperty,
    IntersectionOf,
    Iri,
    Literal,
    Named,
    ObjectPropertyRange,
    Ontology,
    OntologyError,
    SomeValuesFrom,
    SubClassOf,
    UnionOf,
)

__all__ = [
    "Format",
    "FunctionalSyntaxError",
    "SerializationConfig",
    "Sort",
    "UndeclaredReferenceError",
    "read_functional_subset",
    "to_functional",
]


class Format(enum.Enum):
    FUNCTIONAL = "functional"
    MANCHESTER = "manchester"


class Sort(enum.Enum):
    INSERTION = "insertion"
    CANONICAL = "canonical"


@dataclass(frozen=True)
class SerializationConfig:
    format: Format = Format.FUNCTIONAL
    sort: Sort = Sort.INSERTION
    # Manchester only: render labelled entities by their quoted rdfs:label.
    use_labels: bool = False


class UndeclaredReferenceError(OntologyError):
    def __init__(self, iris: list[Iri]) -> None:
        super().__init__("undeclared entities: " + ", ".join(str(i) for i in iris))
        self.iris = iris


def check_declared(ont: Ontology) -> None:
    missing = ont.undeclared()
    if missing:
        raise UndeclaredReferenceError(missing)


AXIOM_RANK = {
    Declaration: 0,
    SubClassOf: 1,
    EquivalentClasses: 2,
    DisjointClasses: 3,
    FunctionalObjectProperty: 4,
    ObjectPropertyRange: 5,
    AnnotationAssertion: 6,
}

_LOCAL = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*(?<!\.)|[0-9][A-Za-z0-9_.\-]*(?<!\.)")


class Names:
    """Shortens IRIs to ``prefix:local`` (``:local`` for the default namespace)."""

    def __init__(self, ont: Ontology) -> None:
        self.by_base = {uri: name for name, uri in sorted(ont.prefixes.items())}
        self.by_base[ont.ns] = ""

    def prefixed(self, iri: Iri) -> str | None:
        name = self.by_base.get(iri.base)
        if name is None or not _LOCAL.fullmatch(iri.fragment):
            return None
        return f"{name}:{iri.fragment}"

    def __call__(self, iri: Iri) -> str:
        return self.prefixed(iri) or f"<{iri}>"


def quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def literal(lit: Literal, names: Names) -> str:
    out = quote(lit.lexical)
    if lit.lang is not None:
        return f"{out}@{lit.lang}"
    if lit.datatype is not None:
        return f"{out}^^{names(lit.datatype)}"
    return out


def expression(expr: ClassExpression, names: Names) -> str:
    if isinstance(expr, Named):
        return names(expr.iri)
    if isinstance(expr, SomeValuesFrom):
        return f"ObjectSomeValuesFrom({names(expr.property)} {expression(expr.filler, names)})"
    if isinstance(expr, AllValuesFrom):
        return f"ObjectAllValuesFrom({names(expr.property)} {expression(expr.filler, names)})"
    if isinstance(expr, ExactCardinality):
        return f"ObjectExactCardinality({expr.n} {names(expr.property)} {expression(expr.filler, names)})"
    if isinstance(expr, IntersectionOf):
        return "ObjectIntersectionOf(" + " ".join(expression(o, names) for o in expr.operands) + ")"
    if isinstance(expr, UnionOf):
        return "ObjectUnionOf(" + " ".join(expression(o, names) for o in expr.operands) + ")"
    raise TypeError(f"not a class expression: {expr!r}")


def axiom(ax: Axiom, names: Names, canonical: bool = False) -> str:
    if isinstance(ax, Declaration):
        return f"Declaration({ax.entity.kind.value}({names(ax.entity.iri)}))"
    if isinstance(ax, SubClassOf):
        return f"SubClassOf({expression(ax.sub, names)} {expression(ax.sup, names)})"
    if isinstance(ax, (EquivalentClasses, DisjointClasses)):
        ops = [expression(o, names) for o in ax.operands]
        if canonical:
            ops.sort()
        return f"{type(ax).__name__}(" + " ".join(ops) + ")"
    if isinstance(ax, AnnotationAssertion):
        value = ax.annotation.value
        rendered = names(value) if isinstance(value, Iri) else literal(value, names)
        return f"AnnotationAssertion({names(ax.annotation.property)} {names(ax.subject)} {rendered})"
    if isinstance(ax, FunctionalObjectProperty):
        return f"FunctionalObjectProperty({names(ax.property)})"
    if isinstance(ax, ObjectPropertyRange):
        return f"ObjectPropertyRange({names(ax.property)} {expression(ax.range, names)})"
    raise TypeError(f"not an axiom: {ax!r}")


def prefix_lines(ont: Ontology) -> list[tuple[str, str]]:
    return [("", ont.ns)] + sorted(ont.prefixes.items())


def to_functional(ont: Ontology, cfg: SerializationConfig = SerializationConfig()) -> str:
    check_declared(ont)
    names = Names(ont)
    canonical = cfg.sort is Sort.CANONICAL
    lines = [f"Prefix({name}:=<{uri}>)" for name, uri in prefix_lines(ont)]
    lines.append("")
    lines.append(f"Ontology(<{ont.iri}>")
    rendered = [(AXIOM_RANK[type(a)], axiom(a, names, canonical)) for a in ont.axioms]
    if canonical:
        rendered.sort()
    lines.extend(text for _, text in rendered)
    lines.append(")")
    return "\n".join(lines) + "\n"


# Reader


class FunctionalSyntaxError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>\#[^\n]*)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<iri><[^<>\s"]*>)
  | (?P<string>"(?:[^"\\]|\\.)*"(?:@[A-Za-z]+(?:-[A-Za-z0-9]+)*|\^\^(?:<[^<>\s"]*>|[A-Za-z][\w.\-]*:[^\s()]*|:[^\s()]*))?)
  | (?P<prefix_decl>[A-Za-z][\w.\-]*:=|:=)
  | (?P<name>[A-Za-z][\w.\-]*:[^\s()"<>]*|:[^\s()"<>]*)
  | (?P<int>\d+)
  | (?P<word>[A-Za-z]+)
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FunctionalSyntaxError(f"unexpected character {text[pos]!r}", line)
        if m.lastgroup not in ("ws", "comment"):
            toks.append(_Tok(m.lastgroup, m.group(), line))
        line += m.group().count("\n")
        pos = m.end()
    return toks


_EXPRESSIONS = {"ObjectSomeValuesFrom", "ObjectAllValuesFrom", "ObjectExactCardinality", "ObjectIntersectionOf", "ObjectUnionOf"}


class _Reader:
    def __init__(self, text: str) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.prefixes: dict[str, str] = {}

    def line(self) -> int:
        if self.i < len(self.toks):
            return self.toks[self.i].line
        return self.toks[-1].line if self.toks else 1

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, kind: str | None = None, text: str | None = None) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise FunctionalSyntaxError("unexpected end of input", self.line())
        if (kind and tok.kind != kind) or (text and tok.text != text):
            want = text or kind
            raise FunctionalSyntaxError(f"expected {want}, found {tok.text!r}", tok.line)
        self.i += 1
        return tok

    def iri(self) -> Iri:
        tok = self.next()
        try:
            if tok.kind == "iri":
                return Iri.parse(tok.text[1:-1])
            if tok.kind == "name":
                prefix, _, local = tok.text.partition(":")
                if prefix not in self.prefixes:
                    raise FunctionalSyntaxError(f"unknown prefix {prefix!r}", tok.line)
                return Iri(self.prefixes[prefix], local)
        except ValueError as e:
            if isinstance(e, FunctionalSyntaxError):
                raise
            raise FunctionalSyntaxError(str(e), tok.line) from None
        raise FunctionalSyntaxError(f"expected an IRI, found {tok.text!r}", tok.line)

    def literal(self, tok: _Tok) -> Literal:
        m = re.fullmatch(r'"((?:[^"\\]|\\.)*)"(?:@(.+)|\^\^(.+))?', tok.text)
        lexical = re.sub(r"\\(.)", r"\1", m.group(1))
        datatype = None
        if m.group(3):
            saved, self.toks = self.toks, _tokenize(m.group(3))
            saved_i, self.i = self.i, 0
            try:
                datatype = self.iri()
            finally:
                self.toks, self.i = saved, saved_i
        return Literal(lexical, lang=m.group(2), datatype=datatype)

    def keyword(self) -> _Tok:
        tok = self.next()
        if tok.kind not in ("word", "name") or ":" in tok.text:
            raise FunctionalSyntaxError(f"expected a keyword, found {tok.text!r}", tok.line)
        return tok

    def expression(self) -> ClassExpression:
        tok = self.peek()
        if tok is not None and tok.kind == "word":
            if tok.text not in _EXPRESSIONS:
                raise FunctionalSyntaxError(f"unsupported class expression {tok.text!r}", tok.line)
            self.i += 1
            self.next("lparen")
            if tok.text == "ObjectExactCardinality":
                n = int(self.next("int").text)
                expr = ExactCardinality(n, self.iri(), self.expression())
            elif tok.text in ("ObjectSomeValuesFrom", "ObjectAllValuesFrom"):
                prop = self.iri()
                filler = self.expression()
                cls = SomeValuesFrom if tok.text == "ObjectSomeValuesFrom" else AllValuesFrom
                expr = cls(prop, filler)
            else:
                ops = self.operands()
                cls = IntersectionOf if tok.text == "ObjectIntersectionOf" else UnionOf
                try:
                    expr = cls(tuple(ops))
                except ValueError as e:
                    raise FunctionalSyntaxError(str(e), tok.line) from None
                return expr
            self.next("rparen")
            return expr
        return Named(self.iri())

    def operands(self) -> list[ClassExpression]:
        """Expressions up to and including the closing parenthesis."""
        ops = []
        while self.peek() is not None and self.peek().kind != "rparen":
            ops.append(self.expression())
        self.next("rparen")
        return ops

    def axiom(self) -> Axiom:
        tok = self.keyword()
        kw = tok.text
        self.next("lparen")
        try:
            if kw == "Declaration":
                kind_tok = self.keyword()
                try:
                    kind = EntityKind(kind_tok.text)
                except ValueError:
                    raise FunctionalSyntaxError(f"unsupported declaration kind {kind_tok.text!r}", kind_tok.line) from None
                self.next("lparen")
                ax = Declaration(Entity(kind, self.iri()))
                self.next("rparen")
            elif kw == "SubClassOf":
                ax = SubClassOf(self.expression(), self.expression())
            elif kw in ("EquivalentClasses", "DisjointClasses"):
                ops = self.operands()
                return (EquivalentClasses if kw == "EquivalentClasses" else DisjointClasses)(ops)
            elif kw == "AnnotationAssertion":
                prop = self.iri()
                subject = self.iri()
                value_tok = self.peek()
                if value_tok is not None and value_tok.kind == "string":
                    self.i += 1
                    value = self.literal(value_tok)
                else:
                    value = self.iri()
                ax = AnnotationAssertion(subject, Annotation(prop, value))
            elif kw == "FunctionalObjectProperty":
                ax = FunctionalObjectProperty(self.iri())
            elif kw == "ObjectPropertyRange":
                ax = ObjectPropertyRange(self.iri(), self.expression())
            else:
                raise FunctionalSyntaxError(f"unsupported axiom kind {kw!r}", tok.line)
        except (ValueError, TypeError) as e:
            if isinstance(e, FunctionalSyntaxError):
                raise
            raise FunctionalSyntaxError(str(e), tok.line) from None
        self.next("rparen")
        return ax

    def document(self) -> Ontology:
        while self.peek() is not None and self.peek().text == "Prefix":
            self.i += 1
            self.next("lparen")
            decl = self.next("prefix_decl")
            uri = self.next("iri").text[1:-1]
            self.next("rparen")
            name = decl.text[:-2]
            if name in self.prefixes:
                raise FunctionalSyntaxError(f"prefix {name!r} declared twice", decl.line)
            self.prefixes[name] = uri
        tok = self.keyword()
        if tok.text != "Ontology":
            raise FunctionalSyntaxError(f"expected Ontology, found {tok.text!r}", tok.line)
        self.next("lparen")
        iri = self.iri()
        if "" not in self.prefixes:
            raise FunctionalSyntaxError("missing default prefix declaration", tok.line)
        prefixes = {k: v for k, v in self.prefixes.items() if k}
        ont = Ontology(iri, self.prefixes[""], prefixes)
        while self.peek() is not None and self.peek().kind != "rparen":
            line = self.line()
            try:
                ont.add(self.axiom())
            except OntologyError as e:
                raise FunctionalSyntaxError(str(e), line) from None
        self.next("rparen")
        if self.peek() is not None:
            raise FunctionalSyntaxError(f"trailing content {self.peek().text!r}", self.peek().line)
        return ont


def read_functional_subset(text: str) -> Ontology:
    """Rebuild an ontology from text written by :func:`to_functional`."""
    return _Reader(text).document()
