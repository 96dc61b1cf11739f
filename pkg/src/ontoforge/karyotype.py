"""Human chromosome band partonomy, centromeres/telomeres, karyotype events and statistics."""

from __future__ import annotations

import json
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .owl import (
    ClassExpression,
    EntityKind,
    Iri,
    Named,
    Ontology,
    UndeclaredEntityError,
    declare_property,
    exactly,
    owl_and,
    owl_class,
    owl_some,
    subclasses_of,
)

CHROMOSOMES: tuple[str, ...] = tuple(str(i) for i in range(1, 23)) + ("X", "Y")
AUTOSOMES = CHROMOSOMES[:22]
SEX_CHROMOSOMES = ("X", "Y")

_BAND_RE = re.compile(r"([pq])(\d+(?:\.\d{1,2})?)")


def check_chromosome(value: str) -> str:
    if value not in CHROMOSOMES:
        raise ValueError(f"unknown chromosome {value!r}; expected 1..22, X or Y")
    return value


@dataclass(frozen=True, order=True)
class BandName:
    arm: str
    digits: str

    def __post_init__(self) -> None:
        if self.arm not in ("p", "q") or not re.fullmatch(r"\d+(?:\.\d{1,2})?", self.digits):
            raise ValueError(f"malformed band name {self.arm}{self.digits!r}")

    def __str__(self) -> str:
        return self.arm + self.digits

    @classmethod
    def parse(cls, text: str) -> BandName:
        m = _BAND_RE.fullmatch(text)
        if not m:
            raise ValueError(f"malformed band name {text!r}")
        return cls(m.group(1), m.group(2))

    @property
    def parent(self) -> BandName | None:
        """The band one resolution digit up, for two-decimal sub-bands only."""
        whole, _, frac = self.digits.partition(".")
        if len(frac) == 2:
            return BandName(self.arm, f"{whole}.{frac[0]}")
        return None


# Entity naming, kept identical to the generated names shown for chromosome 1.


def chromosome_name(chrom: str) -> str:
    return f"HumanChromosome{chrom}"


def band_root_name(chrom: str) -> str:
    return f"HumanChromosome{chrom}Band"


def arm_name(chrom: str, arm: str) -> str:
    return f"HumanChromosome{chrom}Band{arm}"


def band_name(chrom: str, band: BandName | str) -> str:
    return f"HumanChromosomeBand{chrom}{band}"


def human_scaffold(ont: Ontology) -> None:
    chromosome = owl_class(ont, "HumanChromosome")
    autosome = owl_class(ont, "HumanAutosome", subclass=[chromosome])
    sex = owl_class(ont, "HumanSexChromosome", subclass=[chromosome])
    owl_class(ont, "HumanChromosomeBand")
    owl_class(ont, "HumanCentromere")
    owl_class(ont, "HumanTelomere")
    for chrom in CHROMOSOMES:
        owl_class(ont, chromosome_name(chrom), subclass=[sex if chrom in SEX_CHROMOSOMES else autosome])
    for prop in ("isBandOf", "isSubBandOf", "hasEvent", "hasBreakPoint", "derivedFrom"):
        declare_property(ont, prop)


def _prop(ont: Ontology, name: str) -> Iri:
    return ont.require(ont.iri_for(name), EntityKind.OBJECT_PROPERTY)


def humanbands(ont: Ontology, chromosome: str, bands: Sequence[BandName | str]) -> None:
    check_chromosome(chromosome)
    bands = [b if isinstance(b, BandName) else BandName.parse(b) for b in bands]
    if len(set(bands)) != len(bands):
        raise ValueError(f"chromosome {chromosome}: band names must be distinct")
    present = set(bands)
    for band in bands:
        if band.parent is not None and band.parent not in present:
            raise ValueError(f"chromosome {chromosome}: sub-band {band} has no parent band {band.parent} in the list")

    is_band_of = _prop(ont, "isBandOf")
    is_sub_band_of = _prop(ont, "isSubBandOf")
    root = Named(ont.require(ont.iri_for("HumanChromosomeBand")))
    chrom = Named(ont.require(ont.iri_for(chromosome_name(chromosome))))

    chrom_root = owl_class(ont, band_root_name(chromosome), subclass=[root, owl_some(is_band_of, chrom)])
    arms = {}
    for band in bands:
        if band.arm not in arms:
            arms[band.arm] = owl_class(ont, arm_name(chromosome, band.arm), subclass=[chrom_root])
    for band in bands:
        frames: list = [arms[band.arm]]
        if band.parent is not None:
            frames.append(owl_some(is_sub_band_of, ont.iri_for(band_name(chromosome, band.parent))))
        owl_class(ont, band_name(chromosome, band), subclass=frames)


def centromere_telomere(ont: Ontology, chromosomes: Iterable[str] = CHROMOSOMES) -> None:
    is_band_of = _prop(ont, "isBandOf")
    centromere = Named(ont.require(ont.iri_for("HumanCentromere")))
    telomere = Named(ont.require(ont.iri_for("HumanTelomere")))
    for chrom in chromosomes:
        check_chromosome(chrom)
        located = owl_some(is_band_of, ont.require(ont.iri_for(chromosome_name(chrom))))
        owl_class(ont, f"HumanChromosome{chrom}Centromere", subclass=[centromere, located])
        # One class covers both the pTer and qTer ends.
        owl_class(ont, f"HumanChromosome{chrom}Telomere", subclass=[telomere, located])


@dataclass(frozen=True)
class Deletion:
    n: int
    target: Iri

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("event count must be at least 1")


@dataclass(frozen=True)
class Addition:
    n: int
    target: Iri

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("event count must be at least 1")


@dataclass(frozen=True)
class Inversion:
    n: int
    band1: Iri
    band2: Iri

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("event count must be at least 1")


KaryotypeEvent = Union[Deletion, Addition, Inversion]


def event_restriction(event: KaryotypeEvent, ns: str | None = None) -> ClassExpression:
    """``hasEvent exactly n (EventClass and hasBreakPoint some ...)`` for ``event``.

    ``ns`` is the namespace holding the event classes and properties; it
    defaults to the namespace of the first break point.
    """
    if ns is None:
        ns = (event.band1 if isinstance(event, Inversion) else event.target).base
    has_event = Iri(ns, "hasEvent")
    has_break_point = Iri(ns, "hasBreakPoint")
    kind = Named(Iri(ns, type(event).__name__))
    if isinstance(event, Inversion):
        points = [event.band1, event.band2]
    else:
        points = [event.target]
    return exactly(event.n, has_event, owl_and(kind, owl_some(has_break_point, points)))


def karyotype_scaffold(ont: Ontology) -> None:
    owl_class(ont, "ISCNExampleKaryotype")
    for kind in ("Deletion", "Addition", "Inversion"):
        owl_class(ont, kind)


def karyotype_class(
    ont: Ontology,
    name: str,
    derived_from: Iri,
    events: Sequence[KaryotypeEvent] = (),
    *,
    label: str | None = None,
) -> Named:
    ont.require(derived_from)
    for event in events:
        points = [event.band1, event.band2] if isinstance(event, Inversion) else [event.target]
        for point in points:
            if not ont.is_class(point):
                raise UndeclaredEntityError(f"break point {point} is not a declared class")
    karyotype_scaffold(ont)
    return owl_class(
        ont,
        name,
        label=label,
        subclass=[
            Named(ont.iri_for("ISCNExampleKaryotype")),
            owl_some(_prop(ont, "derivedFrom"), derived_from),
            [event_restriction(e, ont.ns) for e in events],
        ],
    )


def base_karyotype(ont: Ontology, sex: str) -> Named:
    """The normal 46-chromosome karyotype for ``sex`` ("XX", "XY" or "XN")."""
    if sex not in ("XX", "XY", "XN"):
        raise ValueError(f"no base karyotype for sex designation {sex!r}")
    karyotype_scaffold(ont)
    return owl_class(
        ont,
        f"k46_{sex}",
        label=f"The 46,{sex} karyotype",
        subclass=[Named(ont.iri_for("ISCNExampleKaryotype"))],
    )


@dataclass(frozen=True)
class StatsRow:
    category: str
    biological: int
    classes: int


def _under(ont: Ontology, root: str) -> set[Iri]:
    iri = ont.iri_for(root)
    if not ont.is_class(iri):
        return set()
    return subclasses_of(ont, iri, transitive=True) | {iri}


def karyotype_stats(ont: Ontology) -> list[StatsRow]:
    """Per-category biological object and class counts.

    Class counts include the category root and every intermediate class.
    Biological objects: one per concrete chromosome, one centromere per
    chromosome, two telomeres per chromosome, and one per band class that is
    neither a per-chromosome band root nor an arm class.
    """
    chromosomes = _under(ont, "HumanChromosome")
    centromeres = _under(ont, "HumanCentromere")
    telomeres = _under(ont, "HumanTelomere")
    bands = _under(ont, "HumanChromosomeBand")

    concrete = {ont.iri_for(chromosome_name(c)) for c in CHROMOSOMES}
    structural = {ont.iri_for("HumanChromosomeBand")}
    for c in CHROMOSOMES:
        structural.add(ont.iri_for(band_root_name(c)))
        structural.update(ont.iri_for(arm_name(c, arm)) for arm in "pq")
    specific_centromeres = {ont.iri_for(f"HumanChromosome{c}Centromere") for c in CHROMOSOMES}
    specific_telomeres = {ont.iri_for(f"HumanChromosome{c}Telomere") for c in CHROMOSOMES}

    rows = [
        StatsRow("Chromosome", len(chromosomes & concrete), len(chromosomes)),
        StatsRow("Centromere", len(centromeres & specific_centromeres), len(centromeres)),
        StatsRow("Telomere", 2 * len(telomeres & specific_telomeres), len(telomeres)),
        StatsRow("Bands and Sub-bands", len(bands - structural), len(bands)),
    ]
    rows.append(
        StatsRow("Total", sum(r.biological for r in rows), sum(r.classes for r in rows))
    )
    return rows


def format_stats(rows: Sequence[StatsRow]) -> str:
    header = ("Class Type", "Biological Object", "Number of Classes")
    table = [header] + [(r.category, str(r.biological), str(r.classes)) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(3)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class BandEntry:
    chromosome: str
    bands: tuple[BandName, ...]


def parse_band_dataset(text: str) -> list[BandEntry]:
    """Parse a JSON array of ``{"chromosome": ..., "bands": [...]}`` objects."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("band dataset must be a JSON array")
    entries: list[BandEntry] = []
    seen: set[str] = set()
    for i, item in enumerate(data):
        if not isinstance(item, dict):
            raise ValueError(f"entry {i}: expected an object")
        unknown = set(item) - {"chromosome", "bands"}
        if unknown:
            raise ValueError(f"entry {i}: unknown keys {sorted(unknown)}")
        if "chromosome" not in item or "bands" not in item:
            raise ValueError(f"entry {i}: needs both 'chromosome' and 'bands'")
        chrom = item["chromosome"]
        if not isinstance(chrom, str):
            raise ValueError(f"entry {i}: chromosome must be a string")
        check_chromosome(chrom)
        if chrom in seen:
            raise ValueError(f"entry {i}: chromosome {chrom} listed twice")
        seen.add(chrom)
        raw = item["bands"]
        if not isinstance(raw, list) or not all(isinstance(b, str) for b in raw):
            raise ValueError(f"entry {i}: bands must be a list of strings")
        bands = tuple(BandName.parse(b) for b in raw)
        if len(set(bands)) != len(bands):
            raise ValueError(f"entry {i}: duplicate band names")
        entries.append(BandEntry(chrom, bands))
    return entries


def read_band_dataset(path: str | Path) -> list[BandEntry]:
    return parse_band_dataset(Path(path).read_text(encoding="utf-8"))
