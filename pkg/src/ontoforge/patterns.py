"""Generic design patterns (closure, covering, value partition) and the pizza exemplar."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

from .owl import (
    AllValuesFrom,
    DisjointClasses,
    EntityKind,
    Iri,
    Named,
    ObjectPropertyRange,
    Ontology,
    SomeValuesFrom,
    SubClassOf,
    UnionOf,
    declare_property,
    owl_class,
    owl_only,
    owl_or,
    owl_some,
)

__all__ = [
    "ClosureFinding",
    "NamedPizzaSpec",
    "PIZZA_TOPPINGS",
    "ValuePartition",
    "ValuePartitionSpec",
    "check_closure",
    "covering_axiom",
    "generate_named_pizza",
    "parse_named_pizzas",
    "pizza_scaffold",
    "pizza_toppings",
    "read_named_pizzas",
    "some_only",
    "value_partition",
]


def some_only(prop: Iri, *fillers) -> list:
    """Existential restriction per filler plus one closing universal."""
    some = owl_some(prop, *fillers)
    fillers_ = [r.filler for r in some]
    if len(set(fillers_)) != len(fillers_):
        raise ValueError("some_only fillers must be distinct")
    return [*some, owl_only(prop, fillers_)]


def covering_axiom(ont: Ontology, parent: Iri, children: Sequence[Iri], disjoint: bool = False) -> None:
    if not children:
        raise ValueError("a covering axiom needs at least one child")
    ont.require(parent)
    for child in children:
        ont.require(child)
    ont.add(SubClassOf(Named(parent), owl_or([Named(c) for c in children])))
    if disjoint and len(children) >= 2:
        ont.add(DisjointClasses([Named(c) for c in children]))


@dataclass(frozen=True)
class ValuePartitionSpec:
    partition_name: str
    values: tuple[str, ...]
    include_covering: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if not self.values:
            raise ValueError("a value partition needs at least one value")
        if len(set(self.values)) != len(self.values):
            raise ValueError("value names must be distinct")
        if self.partition_name in self.values:
            raise ValueError("value names must differ from the partition name")


@dataclass(frozen=True)
class ValuePartition:
    partition_class: Iri
    property: Iri
    value_classes: tuple[Iri, ...]


def value_partition(ont: Ontology, spec: ValuePartitionSpec) -> ValuePartition:
    """Partition class, disjoint value subclasses and a functional ``has<Partition>`` property."""
    partition = owl_class(ont, spec.partition_name)
    values = tuple(owl_class(ont, v, subclass=[partition]).iri for v in spec.values)
    if len(values) >= 2:
        ont.add(DisjointClasses([Named(v) for v in values]))
    prop = declare_property(ont, "has" + spec.partition_name, functional=True)
    ont.add(ObjectPropertyRange(prop, partition))
    if spec.include_covering:
        covering_axiom(ont, partition.iri, values)
    return ValuePartition(partition.iri, prop, values)


def pizza_scaffold(ont: Ontology) -> None:
    has_topping = declare_property(ont, "hasTopping")
    has_base = declare_property(ont, "hasBase")
    topping = owl_class(ont, "PizzaTopping")
    base = owl_class(ont, "PizzaBase")
    pizza = owl_class(
        ont,
        "Pizza",
        label="Pizza",
        subclass=[owl_some(has_topping, topping), owl_some(has_base, base)],
    )
    owl_class(ont, "NamedPizza", subclass=[pizza])


PIZZA_TOPPINGS = (
    "AnchoviesTopping",
    "CaperTopping",
    "HamTopping",
    "MozzarellaTopping",
    "OliveTopping",
    "OnionTopping",
    "PeperonataTopping",
    "PrawnsTopping",
    "TobascoPepperSauce",
    "TomatoTopping",
)


def pizza_toppings(ont: Ontology, names: Iterable[str] = PIZZA_TOPPINGS) -> list[Iri]:
    """Topping classes under PizzaTopping, enough to run the shipped named pizzas."""
    topping = Named(ont.require(ont.iri_for("PizzaTopping")))
    return [owl_class(ont, name, subclass=[topping]).iri for name in names]


@dataclass(frozen=True)
class NamedPizzaSpec:
    name: str
    toppings: tuple[str | Iri, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "toppings", tuple(self.toppings))
        if not self.toppings:
            raise ValueError(f"{self.name}: a named pizza needs at least one topping")
        if len(set(self.toppings)) != len(self.toppings):
            raise ValueError(f"{self.name}: toppings must be distinct")


def generate_named_pizza(ont: Ontology, specs: Iterable[NamedPizzaSpec]) -> list[Named]:
    specs = list(specs)
    if not specs:
        return []
    named_pizza = Named(ont.require(ont.iri_for("NamedPizza")))
    has_topping = ont.require(ont.iri_for("hasTopping"), EntityKind.OBJECT_PROPERTY)
    out = []
    for spec in specs:
        toppings = [ont.require(t if isinstance(t, Iri) else ont.iri_for(t)) for t in spec.toppings]
        out.append(owl_class(ont, spec.name, subclass=[named_pizza, some_only(has_topping, toppings)]))
    return out


def parse_named_pizzas(text: str) -> list[NamedPizzaSpec]:
    """One pizza per line: name then toppings, whitespace separated; ``#`` starts a comment line."""
    specs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, *toppings = line.split()
        if not toppings:
            raise ValueError(f"line {lineno}: pizza {name!r} has no toppings")
        specs.append(NamedPizzaSpec(name, tuple(toppings)))
    return specs


def read_named_pizzas(path: str | Path) -> list[NamedPizzaSpec]:
    return parse_named_pizzas(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class ClosureFinding:
    cls: Iri
    property: Iri
    existential: frozenset
    universal: frozenset

    def __str__(self) -> str:
        return (
            f"{self.cls}: closure on {self.property} does not match its existentials "
            f"(some: {sorted(map(repr, self.existential))}; only: {sorted(map(repr, self.universal))})"
        )


def check_closure(ont: Ontology) -> list[ClosureFinding]:
    """Classes whose universal restriction on a property disagrees with the existential fillers.

    Only (class, property) pairs carrying both kinds of restriction as
    subclass axioms are checked.
    """
    findings = []
    for cls in sorted(ont.entities(EntityKind.CLASS), key=str):
        some: dict[Iri, set] = {}
        only: dict[Iri, list] = {}
        for sup in ont.superclasses(cls):
            if isinstance(sup, SomeValuesFrom):
                some.setdefault(sup.property, set()).add(sup.filler)
            elif isinstance(sup, AllValuesFrom):
                only.setdefault(sup.property, []).append(sup.filler)
        for prop in sorted(some.keys() & only.keys(), key=str):
            for filler in only[prop]:
                ops = frozenset(filler.operands) if isinstance(filler, UnionOf) else frozenset([filler])
                if ops != frozenset(some[prop]):
                    findings.append(ClosureFinding(cls, prop, frozenset(some[prop]), ops))
    return findings

