"""Reproducible example builds shared by the command line and the test suite."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from . import iscn
from .karyotype import (
    BandEntry,
    centromere_telomere,
    human_scaffold,
    humanbands,
    parse_band_dataset,
    read_band_dataset,
)
from .owl import Iri, Named, Ontology, new_ontology
from .patterns import (
    ValuePartitionSpec,
    generate_named_pizza,
    parse_named_pizzas,
    pizza_scaffold,
    pizza_toppings,
    read_named_pizzas,
    value_partition,
)
from .sio import (
    DC_TERMS,
    AtomSpec,
    SioClassSpec,
    biochemical_pathway,
    owl_atom,
    parse_atoms,
    read_atoms,
    sio_class,
    sio_scaffold,
)

BASE = "http://example.org/ontoforge/"
NS_ENV = "ONTOFORGE_NS"


def data_text(name: str) -> str:
    return resources.files("ontoforge.data").joinpath(name).read_text(encoding="utf-8")


def make_ontology(name: str, prefixes: dict[str, str] | None = None) -> Ontology:
    """Fresh ontology ``<BASE><name>``; ``$ONTOFORGE_NS`` overrides the entity namespace."""
    return new_ontology(Iri(BASE, name), prefixes, ns=os.environ.get(NS_ENV) or None)


def build_pizza(pizzas: str | Path | None = None) -> Ontology:
    ont = make_ontology("pizza")
    pizza_scaffold(ont)
    pizza_toppings(ont)
    value_partition(ont, ValuePartitionSpec("Spiciness", ("Mild", "Medium", "Hot")))
    specs = read_named_pizzas(pizzas) if pizzas else parse_named_pizzas(data_text("named_pizzas.txt"))
    generate_named_pizza(ont, specs)
    return ont


def sample_bands() -> list[BandEntry]:
    return parse_band_dataset(data_text("bands_sample.json"))


def build_karyotype(bands: str | Path | None = None, ont: Ontology | None = None) -> Ontology:
    ont = ont if ont is not None else make_ontology("karyotype")
    human_scaffold(ont)
    for entry in read_band_dataset(bands) if bands else sample_bands():
        humanbands(ont, entry.chromosome, entry.bands)
    centromere_telomere(ont)
    return ont


def build_iscn(text: str, name: str | None = None, bands: str | Path | None = None) -> tuple[Ontology, Named]:
    """Full build holding the compiled karyotype class; see :meth:`Ontology.fragment`."""
    k = iscn.parse_iscn(text)
    ont = make_ontology("karyotype")
    human_scaffold(ont)
    for entry in read_band_dataset(bands) if bands else sample_bands():
        humanbands(ont, entry.chromosome, entry.bands)
    return ont, iscn.iscn_to_ontology(ont, k, name)


GLYCOLYSIS_START = (
    ("hexokinase reaction", "A biochemical reaction catalysed by hexokinase."),
    ("phosphoglucose isomerase reaction", "A biochemical reaction catalysed by phosphoglucose isomerase."),
    ("phosphofructokinase reaction", "A biochemical reaction catalysed by phosphofructokinase."),
)


def build_sio_demo(atoms: str | Path | None = None) -> Ontology:
    ont = make_ontology("sio", {"dc": DC_TERMS})
    sio_scaffold(ont)
    sio_class(
        ont,
        SioClassSpec("to regulate", ont.iri_for("process"), "to regulate is to control the rate or extent of a process."),
    )
    reaction = ont.iri_for("biochemical_reaction")
    reactions = [sio_class(ont, SioClassSpec(name, reaction, text)).iri for name, text in GLYCOLYSIS_START]
    biochemical_pathway(ont, "glycolysis", reactions)
    specs: list[AtomSpec] = read_atoms(atoms) if atoms else parse_atoms(data_text("atoms.json"))
    for spec in specs:
        owl_atom(ont, spec)
    return ont


def example_ontologies() -> dict[str, Ontology]:
    ont_45x, _ = build_iscn("45,X")
    ont_inv, _ = build_iscn("46,XY,inv(2)(p21q31)")
    return {
        "pizza": build_pizza(),
        "karyotype": build_karyotype(),
        "iscn-45,X": ont_45x,
        "iscn-inv": ont_inv,
        "sio": build_sio_demo(),
    }
