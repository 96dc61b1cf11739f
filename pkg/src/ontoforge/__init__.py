"""Pattern-driven OWL ontology construction."""

from .owl import (
    Iri,
    Named,
    Ontology,
    count_by_kind,
    declare_property,
    exactly,
    new_ontology,
    owl_and,
    owl_class,
    owl_only,
    owl_or,
    owl_some,
    subclasses_of,
)

__version__ = "0.1.0"

__all__ = [
    "Iri",
    "Named",
    "Ontology",
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
