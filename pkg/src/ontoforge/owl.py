"""In-memory OWL model: IRIs, class expressions, axioms and the ontology container."""

from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from typing import Union
from urllib.parse import urlsplit

__all__ = [
    "AllValuesFrom",
    "Annotation",
    "AnnotationAssertion",
    "Axiom",
    "ClassExpression",
    "Declaration",
    "DEFAULT_PREFIXES",
    "DisjointClasses",
    "Entity",
    "EntityKind",
    "EquivalentClasses",
    "ExactCardinality",
    "FunctionalObjectProperty",
    "IntersectionOf",
    "Iri",
    "KindConflictError",
    "Literal",
    "Named",
    "ObjectPropertyRange",
    "Ontology",
    "OntologyError",
    "SomeValuesFrom",
    "SubClassOf",
    "UndeclaredEntityError",
    "UnionOf",
    "count_by_kind",
    "declare_property",
    "exactly",
    "new_ontology",
    "owl_and",
    "owl_class",
    "owl_only",
    "owl_or",
    "owl_some",
    "subclasses_of",
]


class OntologyError(Exception):
    """Base class for model-level errors."""


class KindConflictError(OntologyError):
    pass


class UndeclaredEntityError(OntologyError):
    pass


_WS = re.compile(r"\s")


@dataclass(frozen=True, order=True)
class Iri:
    base: str
    fragment: str

    def __post_init__(self) -> None:
        parts = urlsplit(self.base)
        if not parts.scheme or not (parts.netloc or parts.path):
            raise ValueError(f"IRI base is not an absolute URI: {self.base!r}")
        if _WS.search(self.base):
            raise ValueError(f"IRI base contains whitespace: {self.base!r}")
        if not self.fragment or _WS.search(self.fragment):
            raise ValueError(f"invalid IRI fragment: {self.fragment!r}")

    def __str__(self) -> str:
        return self.base + self.fragment

    @classmethod
    def parse(cls, full: str) -> Iri:
        """Split a full IRI string after its last ``#`` or ``/``."""
        cut = max(full.rfind("#"), full.rfind("/"))
        if cut < 0 or cut == len(full) - 1:
            raise ValueError(f"cannot split IRI into base and fragment: {full!r}")
        return cls(full[: cut + 1], full[cut + 1 :])


RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
OWL = "http://www.w3.org/2002/07/owl#"

DEFAULT_PREFIXES: Mapping[str, str] = {"rdf": RDF, "rdfs": RDFS, "xsd": XSD, "owl": OWL}

RDFS_LABEL = Iri(RDFS, "label")
RDFS_COMMENT = Iri(RDFS, "comment")
RDFS_SEE_ALSO = Iri(RDFS, "seeAlso")
OWL_THING = Iri(OWL, "Thing")

# Vocabulary that never needs a Declaration axiom.
BUILTINS = frozenset({RDFS_LABEL, RDFS_COMMENT, RDFS_SEE_ALSO, OWL_THING})


class EntityKind(enum.Enum):
    CLASS = "Class"
    OBJECT_PROPERTY = "ObjectProperty"
    ANNOTATION_PROPERTY = "AnnotationProperty"


@dataclass(frozen=True)
class Entity:
    kind: EntityKind
    iri: Iri


@dataclass(frozen=True)
class Literal:
    lexical: str
    lang: str | None = None
    datatype: Iri | None = None

    def __post_init__(self) -> None:
        if self.lang is not None and self.datatype is not None:
            raise ValueError("a literal carries a language tag or a datatype, not both")
        if self.lang is not None and not re.fullmatch(r"[A-Za-z]+(-[A-Za-z0-9]+)*", self.lang):
            raise ValueError(f"malformed language tag: {self.lang!r}")


@dataclass(frozen=True)
class Annotation:
    property: Iri
    value: Literal | Iri


# Class expressions


@dataclass(frozen=True)
class Named:
    iri: Iri


@dataclass(frozen=True)
class SomeValuesFrom:
    property: Iri
    filler: ClassExpression


@dataclass(frozen=True)
class AllValuesFrom:
    property: Iri
    filler: ClassExpression


@dataclass(frozen=True)
class IntersectionOf:
    operands: tuple[ClassExpression, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("IntersectionOf needs at least two operands")


@dataclass(frozen=True)
class UnionOf:
    operands: tuple[ClassExpression, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise ValueError("UnionOf needs at least two operands")


@dataclass(frozen=True)
class ExactCardinality:
    n: int
    property: Iri
    filler: ClassExpression

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("cardinality must be non-negative")


ClassExpression = Union[Named, SomeValuesFrom, AllValuesFrom, IntersectionOf, UnionOf, ExactCardinality]


def signature(expr: ClassExpression) -> Iterator[Iri]:
    """Yield every IRI mentioned in ``expr`` (classes and properties)."""
    if isinstance(expr, Named):
        yield expr.iri
    elif isinstance(expr, (SomeValuesFrom, AllValuesFrom, ExactCardinality)):
        yield expr.property
        yield from signature(expr.filler)
    else:
        for op in expr.operands:
            yield from signature(op)


# Axioms


@dataclass(frozen=True)
class Declaration:
    entity: Entity


@dataclass(frozen=True)
class SubClassOf:
    sub: ClassExpression
    sup: ClassExpression


class _ClassSetAxiom:
    """Equality over the operand set; the tuple keeps the order for rendering."""

    __slots__ = ("operands",)
    operands: tuple[ClassExpression, ...]

    def __init__(self, operands: Iterable[ClassExpression]) -> None:
        object.__setattr__(self, "operands", tuple(operands))

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return frozenset(self.operands) == frozenset(other.operands)

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self.operands)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.operands)!r})"


class EquivalentClasses(_ClassSetAxiom):
    def __init__(self, operands: Iterable[ClassExpression]) -> None:
        super().__init__(operands)
        if len(set(self.operands)) < 2:
            raise ValueError("EquivalentClasses needs at least two distinct expressions")


class DisjointClasses(_ClassSetAxiom):
    def __init__(self, operands: Iterable[ClassExpression]) -> None:
        super().__init__(operands)
        if len(self.operands) < 2:
            raise ValueError("DisjointClasses needs at least two expressions")
        if len(set(self.operands)) != len(self.operands):
            raise ValueError("DisjointClasses operands must be distinct")


@dataclass(frozen=True)
class AnnotationAssertion:
    subject: Iri
    annotation: Annotation


@dataclass(frozen=True)
class FunctionalObjectProperty:
    property: Iri


@dataclass(frozen=True)
class ObjectPropertyRange:
    property: Iri
    range: ClassExpression


Axiom = Union[
    Declaration,
    SubClassOf,
    EquivalentClasses,
    DisjointClasses,
    AnnotationAssertion,
    FunctionalObjectProperty,
    ObjectPropertyRange,
]


def axiom_signature(axiom: Axiom) -> Iterator[Iri]:
    if isinstance(axiom, Declaration):
        yield axiom.entity.iri
    elif isinstance(axiom, SubClassOf):
        yield from signature(axiom.sub)
        yield from signature(axiom.sup)
    elif isinstance(axiom, (EquivalentClasses, DisjointClasses)):
        for op in axiom.operands:
            yield from signature(op)
    elif isinstance(axiom, AnnotationAssertion):
        # IRI-valued annotations may point outside the ontology; not a reference.
        yield axiom.subject
        yield axiom.annotation.property
    elif isinstance(axiom, FunctionalObjectProperty):
        yield axiom.property
    elif isinstance(axiom, ObjectPropertyRange):
        yield axiom.property
        yield from signature(axiom.range)
    else:
        raise TypeError(f"not an axiom: {axiom!r}")


@dataclass(eq=False)
class Ontology:
    """Ordered, duplicate-free axiom collection plus prefix map.

    Entity names are minted under ``ns`` (the ontology's default namespace).
    """

    iri: Iri
    ns: str
    prefixes: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_PREFIXES))
    _axioms: dict[Axiom, None] = field(default_factory=dict, repr=False)
    _kinds: dict[Iri, EntityKind] = field(default_factory=dict, repr=False)

    @property
    def axioms(self) -> list[Axiom]:
        return list(self._axioms)

    def __len__(self) -> int:
        return len(self._axioms)

    def __contains__(self, axiom: object) -> bool:
        return axiom in self._axioms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return (
            self.iri == other.iri
            and self.ns == other.ns
            and self.prefixes == other.prefixes
            and self._axioms.keys() == other._axioms.keys()
        )

    def iri_for(self, name: str) -> Iri:
        return Iri(self.ns, name)

    def add(self, axiom: Axiom) -> bool:
        """Add ``axiom``; returns False when it was already present."""
        if axiom in self._axioms:
            return False
        if isinstance(axiom, Declaration):
            iri, kind = axiom.entity.iri, axiom.entity.kind
            known = self._kinds.get(iri)
            if known is not None and known is not kind:
                raise KindConflictError(f"{iri} is already declared as {known.value}, not {kind.value}")
            self._kinds[iri] = kind
        self._axioms[axiom] = None
        return True

    def add_all(self, axioms: Iterable[Axiom]) -> None:
        for axiom in axioms:
            self.add(axiom)

    def kind_of(self, iri: Iri) -> EntityKind | None:
        return self._kinds.get(iri)

    def is_class(self, iri: Iri) -> bool:
        return self._kinds.get(iri) is EntityKind.CLASS

    def require(self, iri: Iri, kind: EntityKind = EntityKind.CLASS) -> Iri:
        if self._kinds.get(iri) is not kind:
            raise UndeclaredEntityError(f"{iri} is not a declared {kind.value}")
        return iri

    def entities(self, kind: EntityKind | None = None) -> list[Iri]:
        return [iri for iri, k in self._kinds.items() if kind is None or k is kind]

    def annotations(self, subject: Iri) -> list[Annotation]:
        return [
            a.annotation
            for a in self._axioms
            if isinstance(a, AnnotationAssertion) and a.subject == subject
        ]

    def label(self, subject: Iri) -> str | None:
        for ann in self.annotations(subject):
            if ann.property == RDFS_LABEL and isinstance(ann.value, Literal):
                return ann.value.lexical
        return None

    def superclasses(self, cls: Iri) -> list[ClassExpression]:
        target = Named(cls)
        return [a.sup for a in self._axioms if isinstance(a, SubClassOf) and a.sub == target]

    def undeclared(self) -> list[Iri]:
        """Referenced IRIs lacking a Declaration, in first-reference order."""
        seen: dict[Iri, None] = {}
        for axiom in self._axioms:
            for iri in axiom_signature(axiom):
                if iri not in self._kinds and iri not in BUILTINS:
                    seen.setdefault(iri, None)
        return list(seen)

    def fragment(self, subjects: Iterable[Iri]) -> Ontology:
        """Sub-ontology holding the axioms about ``subjects`` and the declarations they need."""
        wanted = set(subjects)
        picked: list[Axiom] = []
        for axiom in self._axioms:
            if isinstance(axiom, Declaration):
                continue
            if isinstance(axiom, SubClassOf) and isinstance(axiom.sub, Named) and axiom.sub.iri in wanted:
                picked.append(axiom)
            elif isinstance(axiom, AnnotationAssertion) and axiom.subject in wanted:
                picked.append(axiom)
            elif isinstance(axiom, (EquivalentClasses, DisjointClasses)) and any(
                isinstance(op, Named) and op.iri in wanted for op in axiom.operands
            ):
                picked.append(axiom)
        needed = set(wanted)
        for axiom in picked:
            needed.update(axiom_signature(axiom))
        out = Ontology(self.iri, self.ns, dict(self.prefixes))
        for iri, kind in self._kinds.items():
            if iri in needed:
                out.add(Declaration(Entity(kind, iri)))
        out.add_all(picked)
        return out


def new_ontology(iri: Iri, prefixes: Mapping[str, str] | None = None, ns: str | None = None) -> Ontology:
    """Empty ontology; ``ns`` defaults to the ontology IRI followed by ``#``."""
    merged = dict(DEFAULT_PREFIXES)
    for name, uri in (prefixes or {}).items():
        if name in merged and merged[name] != uri:
            raise OntologyError(f"prefix {name!r} conflicts with {merged[name]!r}")
        if not name or not re.fullmatch(r"[A-Za-z][A-Za-z0-9_.\-]*", name):
            raise OntologyError(f"invalid prefix name {name!r}")
        merged[name] = uri
    return Ontology(iri, ns if ns is not None else f"{iri}#", merged)


def _flatten(items) -> Iterator:
    for item in items:
        if isinstance(item, (list, tuple)):
            yield from _flatten(item)
        else:
            yield item


def as_expression(x: ClassExpression | Iri) -> ClassExpression:
    return Named(x) if isinstance(x, Iri) else x


def owl_class(
    ont: Ontology,
    name: str,
    *,
    label: str | None = None,
    subclass: Iterable = (),
    equivalent: Iterable = (),
    annotations: Iterable[Annotation] = (),
) -> Named:
    """Declare a class with frames, mirroring a frame-style ``defclass``.

    ``subclass`` and ``equivalent`` may contain nested lists (``owl_some``
    returns one), which are flattened. Annotation properties outside the
    built-in RDFS vocabulary get declared on the way.
    """
    iri = ont.iri_for(name)
    ont.add(Declaration(Entity(EntityKind.CLASS, iri)))
    me = Named(iri)
    for sup in _flatten(subclass):
        ont.add(SubClassOf(me, as_expression(sup)))
    for eq in _flatten(equivalent):
        ont.add(EquivalentClasses((me, as_expression(eq))))
    if label is not None:
        ont.add(AnnotationAssertion(iri, Annotation(RDFS_LABEL, Literal(label))))
    for ann in annotations:
        if ann.property not in BUILTINS:
            ont.add(Declaration(Entity(EntityKind.ANNOTATION_PROPERTY, ann.property)))
        ont.add(AnnotationAssertion(iri, ann))
    return me


def declare_property(
    ont: Ontology,
    name: str,
    kind: EntityKind = EntityKind.OBJECT_PROPERTY,
    *,
    functional: bool = False,
    label: str | None = None,
) -> Iri:
    if kind is EntityKind.CLASS:
        raise ValueError("declare_property is for properties; use owl_class")
    if functional and kind is not EntityKind.OBJECT_PROPERTY:
        raise ValueError("only object properties can be functional here")
    iri = ont.iri_for(name)
    ont.add(Declaration(Entity(kind, iri)))
    if functional:
        ont.add(FunctionalObjectProperty(iri))
    if label is not None:
        ont.add(AnnotationAssertion(iri, Annotation(RDFS_LABEL, Literal(label))))
    return iri


def owl_some(prop: Iri, *fillers) -> list[SomeValuesFrom]:
    """One existential restriction per filler, in input order."""
    flat = [as_expression(f) for f in _flatten(fillers)]
    if not flat:
        raise ValueError("owl_some needs at least one filler")
    return [SomeValuesFrom(prop, f) for f in flat]


def _union_key(expr: ClassExpression) -> str:
    return repr(expr)


def owl_only(prop: Iri, *fillers) -> AllValuesFrom:
    """Universal restriction over the union of ``fillers``.

    Union operands are put in a canonical order, so closures built from the
    same fillers in any order come out identical.
    """
    flat = list(dict.fromkeys(as_expression(f) for f in _flatten(fillers)))
    if not flat:
        raise ValueError("owl_only needs at least one filler")
    if len(flat) == 1:
        return AllValuesFrom(prop, flat[0])
    return AllValuesFrom(prop, UnionOf(tuple(sorted(flat, key=_union_key))))


def owl_and(*operands) -> ClassExpression:
    flat = [as_expression(o) for o in _flatten(operands)]
    if not flat:
        raise ValueError("owl_and needs at least one operand")
    return flat[0] if len(flat) == 1 else IntersectionOf(tuple(flat))


def owl_or(*operands) -> ClassExpression:
    flat = [as_expression(o) for o in _flatten(operands)]
    if not flat:
        raise ValueError("owl_or needs at least one operand")
    return flat[0] if len(flat) == 1 else UnionOf(tuple(flat))


def exactly(n: int, prop: Iri, filler) -> ExactCardinality:
    return ExactCardinality(n, prop, as_expression(filler))


def count_by_kind(ont: Ontology) -> dict[EntityKind, int]:
    counts = {kind: 0 for kind in EntityKind}
    for axiom in ont.axioms:
        if isinstance(axiom, Declaration):
            counts[axiom.entity.kind] += 1
    return counts


def subclasses_of(ont: Ontology, cls: Iri, transitive: bool = False) -> set[Iri]:
    """Named subclasses of ``cls`` via asserted SubClassOf edges between named classes."""
    ont.require(cls)
    children: dict[Iri, list[Iri]] = {}
    for axiom in ont.axioms:
        if isinstance(axiom, SubClassOf) and isinstance(axiom.sub, Named) and isinstance(axiom.sup, Named):
            children.setdefault(axiom.sup.iri, []).append(axiom.sub.iri)
    found: set[Iri] = set()
    stack = list(children.get(cls, ()))
    while stack:
        iri = stack.pop()
        if iri in found or iri == cls:
            continue
        found.add(iri)
        if transitive:
            stack.extend(children.get(iri, ()))
    return found
