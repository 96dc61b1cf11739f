"""SIO-style construction patterns: safe names, descriptions, atoms, pathways and annotation audits."""

from __future__ import annotations

import json
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .owl import (
    RDFS_SEE_ALSO,
    Annotation,
    ClassExpression,
    Declaration,
    Entity,
    EntityKind,
    Iri,
    Literal,
    Named,
    Ontology,
    declare_property,
    owl_and,
    owl_class,
    owl_some,
    subclasses_of,
)

DC_TERMS = "http://purl.org/dc/terms/"
DC_DESCRIPTION = Iri(DC_TERMS, "description")

RESERVED = frozenset({"true", "false", "nil"})

_UNSAFE = re.compile(r"[^A-Za-z0-9_]")
_UNDERSCORES = re.compile(r"_{2,}")
_CHEBI = re.compile(r"CHEBI:\d+")


def make_safe(label: str) -> str:
    """Identifier-safe form of a label: ``"to regulate"`` becomes ``to_regulate``.

    Characters outside ``[A-Za-z0-9_]`` become ``_`` and runs of ``_``
    collapse. A leading digit gets an ``n`` prefix and reserved words a
    ``_entity`` suffix. Case is preserved.
    """
    if not label:
        raise ValueError("cannot make an identifier from an empty label")
    safe = _UNDERSCORES.sub("_", _UNSAFE.sub("_", label))
    if safe[0].isdigit():
        safe = "n" + safe
    if safe in RESERVED:
        safe += "_entity"
    return safe


def desc(description: str) -> Annotation:
    if not description:
        raise ValueError("description must not be empty")
    return Annotation(DC_DESCRIPTION, Literal(description, lang="en"))


def see_also(value: str) -> Annotation:
    if not value:
        raise ValueError("seeAlso value must not be empty")
    return Annotation(RDFS_SEE_ALSO, Literal(value))


@dataclass(frozen=True)
class SioClassSpec:
    name: str
    parent: ClassExpression | Iri
    description: str
    extra_frames: tuple = field(default=())

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("SIO classes need a name")
        if not self.description:
            raise ValueError(f"{self.name}: SIO classes need a description")
        object.__setattr__(self, "extra_frames", tuple(self.extra_frames))


def sio_class(ont: Ontology, spec: SioClassSpec) -> Named:
    parent = Named(spec.parent) if isinstance(spec.parent, Iri) else spec.parent
    if isinstance(parent, Named) and ont.kind_of(parent.iri) is None:
        ont.add(Declaration(Entity(EntityKind.CLASS, parent.iri)))
    return owl_class(
        ont,
        make_safe(spec.name),
        label=spec.name,
        subclass=[parent, *spec.extra_frames],
        annotations=[desc(spec.description)],
    )


def sio_scaffold(ont: Ontology) -> None:
    """The handful of SIO classes and properties the atom and pathway patterns rely on.

    ``target_role`` is deliberately absent; the role SIO actually defines is
    ``reactant_role``.
    """
    declare_property(ont, "has_proper_part", label="has proper part")
    declare_property(ont, "precedes", label="precedes")
    entity = owl_class(ont, "entity", label="entity")
    process = owl_class(ont, "process", label="process", subclass=[entity])
    owl_class(ont, "pathway", label="pathway", subclass=[process])
    owl_class(ont, "biochemical_reaction", label="biochemical reaction", subclass=[process])
    owl_class(ont, "atom", label="atom", subclass=[entity])
    owl_class(ont, "role", label="role", subclass=[entity])
    owl_class(ont, "reactant_role", label="reactant role", subclass=[Named(ont.iri_for("role"))])


@dataclass(frozen=True)
class AtomSpec:
    name: str
    chebi: str | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("atoms need a name")
        if self.chebi is not None and not _CHEBI.fullmatch(self.chebi):
            raise ValueError(f"{self.name}: malformed ChEBI identifier {self.chebi!r}")


def owl_atom(ont: Ontology, spec: AtomSpec) -> Named:
    atom = Named(ont.require(ont.iri_for("atom")))
    annotations = [see_also(spec.chebi)] if spec.chebi is not None else []
    return owl_class(ont, make_safe(spec.name), label=spec.name, subclass=[atom], annotations=annotations)


def parse_atoms(text: str) -> list[AtomSpec]:
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("atom file must be a JSON array")
    specs = []
    for i, item in enumerate(data):
        if not isinstance(item, dict) or set(item) - {"name", "chebi"} or "name" not in item:
            raise ValueError(f"entry {i}: expected an object with 'name' and optional 'chebi'")
        specs.append(AtomSpec(item["name"], item.get("chebi")))
    return specs


def read_atoms(path: str | Path) -> list[AtomSpec]:
    return parse_atoms(Path(path).read_text(encoding="utf-8"))


def reaction_chain(precedes: Iri, reactions: Sequence[Iri]) -> ClassExpression:
    """``r1 and precedes some (r2 and precedes some (...))``."""
    head = Named(reactions[0])
    if len(reactions) == 1:
        return head
    return owl_and(head, owl_some(precedes, reaction_chain(precedes, reactions[1:])))


def biochemical_pathway(ont: Ontology, name: str, reactions: Sequence[Iri]) -> Named:
    if not reactions:
        raise ValueError("a pathway needs at least one reaction")
    pathway = Named(ont.require(ont.iri_for("pathway")))
    has_proper_part = ont.require(ont.iri_for("has_proper_part"), EntityKind.OBJECT_PROPERTY)
    precedes = ont.require(ont.iri_for("precedes"), EntityKind.OBJECT_PROPERTY)
    for r in reactions:
        ont.require(r)
    operands = [
        pathway,
        *owl_some(has_proper_part, reaction_chain(precedes, reactions)),
        *owl_some(has_proper_part, list(reactions)),
    ]
    return owl_class(ont, make_safe(name), label=name, equivalent=[owl_and(list(dict.fromkeys(operands)))])


@dataclass(frozen=True, order=True)
class AuditFinding:
    cls: Iri
    missing: Iri

    def __str__(self) -> str:
        return f"{self.cls} lacks {self.missing}"


def audit_annotations(ont: Ontology, required: Iterable[Iri], scope: Iri | None = None) -> list[AuditFinding]:
    """Classes strictly below ``scope`` lacking any of the ``required`` annotation properties.

    Without a scope every declared class is audited. Findings come one per
    missing (class, property) pair, ordered by class fragment.
    """
    required = sorted(set(required), key=str)
    classes = ont.entities(EntityKind.CLASS) if scope is None else subclasses_of(ont, scope, transitive=True)
    findings = []
    for cls in classes:
        present = {a.property for a in ont.annotations(cls)}
        findings.extend(AuditFinding(cls, prop) for prop in required if prop not in present)
    return sorted(findings, key=lambda f: (f.cls.fragment, str(f.cls), str(f.missing)))
