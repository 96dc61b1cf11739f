from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ontoforge.builds import build_karyotype
from ontoforge.manchester import manchester_tokens, render_expression, to_manchester
from ontoforge.owl import (
    EntityKind,
    ExactCardinality,
    IntersectionOf,
    Iri,
    Named,
    SomeValuesFrom,
    UndeclaredEntityError,
    count_by_kind,
    new_ontology,
    subclasses_of,
)
from ontoforge.karyotype import (
    CHROMOSOMES,
    Addition,
    BandName,
    Deletion,
    Inversion,
    StatsRow,
    base_karyotype,
    centromere_telomere,
    event_restriction,
    format_stats,
    human_scaffold,
    humanbands,
    karyotype_class,
    karyotype_stats,
    parse_band_dataset,
)

from .conftest import NS, frames, golden, iri

CHR1_BANDS = ["p36.3", "p36.33", "p36.32", "p36.31"]


@pytest.fixture
def scaffolded(ont):
    human_scaffold(ont)
    return ont


def row(rows, category) -> StatsRow:
    (r,) = [r for r in rows if r.category == category]
    return r


class TestBandName:
    @pytest.mark.parametrize(
        "text,parent",
        [("p36.31", "p36.3"), ("p36.3", None), ("q31", None), ("q12.1", None), ("p11.23", "p11.2")],
    )
    def test_parent(self, text, parent):
        b = BandName.parse(text)
        assert str(b) == text
        assert (str(b.parent) if b.parent else None) == parent

    @pytest.mark.parametrize("text", ["", "x12", "p", "p1.", "p1.234", "P12", "p 1"])
    def test_malformed(self, text):
        with pytest.raises(ValueError):
            BandName.parse(text)


class TestScaffold:
    def test_counts(self, scaffolded):
        counts = count_by_kind(scaffolded)
        assert counts[EntityKind.CLASS] == 30
        assert counts[EntityKind.OBJECT_PROPERTY] == 5
        assert len(subclasses_of(scaffolded, iri("HumanChromosome"), transitive=True)) == 26

    def test_sex_chromosomes(self, scaffolded):
        assert subclasses_of(scaffolded, iri("HumanSexChromosome")) == {iri("HumanChromosomeX"), iri("HumanChromosomeY")}

    def test_idempotent(self, scaffolded):
        before = scaffolded.axioms
        human_scaffold(scaffolded)
        assert scaffolded.axioms == before


class TestHumanbands:
    def test_chromosome1_frames(self, scaffolded):
        humanbands(scaffolded, "1", CHR1_BANDS)
        text = to_manchester(scaffolded)
        names = ["HumanChromosome1Band", "HumanChromosome1Bandp", "HumanChromosomeBand1p36.3", "HumanChromosomeBand1p36.31"]
        assert manchester_tokens(frames(text, *names)) == manchester_tokens(golden("chr1_bands.omn"))

    def test_both_arms(self, scaffolded):
        humanbands(scaffolded, "2", ["p21", "q31"])
        assert subclasses_of(scaffolded, iri("HumanChromosome2Band")) == {
            iri("HumanChromosome2Bandp"),
            iri("HumanChromosome2Bandq"),
        }
        assert scaffolded.superclasses(iri("HumanChromosomeBand2q31")) == [Named(iri("HumanChromosome2Bandq"))]

    def test_orphan_sub_band(self, scaffolded):
        with pytest.raises(ValueError, match="p36.3"):
            humanbands(scaffolded, "1", ["p36.31"])

    def test_duplicates(self, scaffolded):
        with pytest.raises(ValueError):
            humanbands(scaffolded, "1", ["p36.3", "p36.3"])

    def test_unknown_chromosome(self, scaffolded):
        with pytest.raises(ValueError):
            humanbands(scaffolded, "23", ["p1"])

    def test_needs_scaffold(self, ont):
        with pytest.raises(UndeclaredEntityError):
            humanbands(ont, "1", ["p1"])

    @given(
        st.dictionaries(
            st.tuples(st.sampled_from("pq"), st.integers(1, 40), st.integers(0, 9)),
            st.lists(st.integers(0, 9), max_size=3, unique=True),
            min_size=1,
            max_size=6,
        )
    )
    def test_sub_band_forest(self, spec):
        bands = []
        for (arm, whole, tenth), subs in spec.items():
            bands.append(f"{arm}{whole}.{tenth}")
            bands += [f"{arm}{whole}.{tenth}{s}" for s in subs]
        ont = new_ontology(Iri("http://example.org/", "k"), ns=NS)
        human_scaffold(ont)
        humanbands(ont, "7", bands)
        sub_of = iri("isSubBandOf")
        parents = {}
        for b in bands:
            for sup in ont.superclasses(iri(f"HumanChromosomeBand7{b}")):
                if isinstance(sup, SomeValuesFrom) and sup.property == sub_of:
                    parents[b] = sup.filler.iri.fragment.removeprefix("HumanChromosomeBand7")
        assert set(parents) == {b for b in bands if len(b.partition(".")[2]) == 2}
        for child, parent in parents.items():
            assert child != parent and child.startswith(parent) and len(child) == len(parent) + 1
            assert parent not in parents


class TestCentromereTelomere:
    def test_table_rows(self, scaffolded):
        centromere_telomere(scaffolded)
        rows = karyotype_stats(scaffolded)
        assert row(rows, "Chromosome") == StatsRow("Chromosome", 24, 27)
        assert row(rows, "Centromere") == StatsRow("Centromere", 24, 25)
        assert row(rows, "Telomere") == StatsRow("Telomere", 48, 25)

    def test_location(self, scaffolded):
        centromere_telomere(scaffolded, ["X"])
        assert scaffolded.superclasses(iri("HumanChromosomeXCentromere")) == [
            Named(iri("HumanCentromere")),
            SomeValuesFrom(iri("isBandOf"), Named(iri("HumanChromosomeX"))),
        ]

    def test_idempotent(self, scaffolded):
        centromere_telomere(scaffolded)
        n = len(scaffolded)
        centromere_telomere(scaffolded)
        assert len(scaffolded) == n


class TestEvents:
    def test_deletion_shape(self, scaffolded):
        expr = event_restriction(Deletion(1, iri("HumanSexChromosome")))
        assert expr == ExactCardinality(
            1,
            iri("hasEvent"),
            IntersectionOf((Named(iri("Deletion")), SomeValuesFrom(iri("hasBreakPoint"), Named(iri("HumanSexChromosome"))))),
        )

    def test_inversion_render(self, scaffolded):
        humanbands(scaffolded, "2", ["p21", "q31"])
        karyotype_class(scaffolded, "k", iri("HumanChromosome2"))
        expr = event_restriction(Inversion(1, iri("HumanChromosomeBand2p21"), iri("HumanChromosomeBand2q31")))
        assert render_expression(expr, scaffolded) == (
            "hasEvent exactly 1 (Inversion and hasBreakPoint some HumanChromosomeBand2p21"
            " and hasBreakPoint some HumanChromosomeBand2q31)"
        )

    def test_addition_count(self):
        expr = event_restriction(Addition(2, iri("HumanChromosome21")))
        assert expr.n == 2 and expr.filler.operands[0] == Named(iri("Addition"))

    def test_count_positive(self):
        with pytest.raises(ValueError):
            Deletion(0, iri("HumanChromosome1"))

    def test_karyotype_class(self, scaffolded):
        base = base_karyotype(scaffolded, "XN")
        cls = karyotype_class(scaffolded, "k45_X", base.iri, [Deletion(1, iri("HumanSexChromosome"))])
        assert scaffolded.superclasses(cls.iri) == [
            Named(iri("ISCNExampleKaryotype")),
            SomeValuesFrom(iri("derivedFrom"), Named(iri("k46_XN"))),
            event_restriction(Deletion(1, iri("HumanSexChromosome"))),
        ]
        assert not scaffolded.undeclared()

    def test_undeclared_break_point(self, scaffolded):
        base = base_karyotype(scaffolded, "XY")
        with pytest.raises(UndeclaredEntityError):
            karyotype_class(scaffolded, "bad", base.iri, [Deletion(1, iri("HumanChromosome1Bandp"))])

    def test_base_karyotype_label(self, scaffolded):
        cls = base_karyotype(scaffolded, "XX")
        assert scaffolded.label(cls.iri) == "The 46,XX karyotype"
        with pytest.raises(ValueError):
            base_karyotype(scaffolded, "YY")


def bands_oracle(dataset: dict[str, list[str]]) -> tuple[int, int]:
    """(biological, classes) for a band dataset: root + per-chromosome roots + arms + bands."""
    arms = sum(len({b[0] for b in bands}) for bands in dataset.values())
    n = sum(len(bands) for bands in dataset.values())
    return n, 1 + len(dataset) + arms + n


class TestStats:
    def test_chromosome1_sample(self, scaffolded):
        humanbands(scaffolded, "1", CHR1_BANDS)
        assert row(karyotype_stats(scaffolded), "Bands and Sub-bands") == StatsRow("Bands and Sub-bands", 4, 7)

    def test_shipped_sample(self):
        dataset = {"1": CHR1_BANDS, "2": ["p21", "q31"]}
        rows = karyotype_stats(build_karyotype())
        bio, classes = bands_oracle(dataset)
        assert row(rows, "Bands and Sub-bands") == StatsRow("Bands and Sub-bands", bio, classes)
        total = row(rows, "Total")
        assert total.biological == sum(r.biological for r in rows[:-1])
        assert total.classes == sum(r.classes for r in rows[:-1])

    @given(
        st.dictionaries(
            st.sampled_from(CHROMOSOMES),
            st.lists(st.tuples(st.sampled_from("pq"), st.integers(1, 99)), min_size=1, max_size=5, unique=True),
            min_size=1,
            max_size=4,
        )
    )
    def test_bands_row_formula(self, spec):
        dataset = {c: [f"{arm}{n}" for arm, n in bands] for c, bands in spec.items()}
        ont = new_ontology(Iri("http://example.org/", "k"), ns=NS)
        human_scaffold(ont)
        for c, bands in dataset.items():
            humanbands(ont, c, bands)
        centromere_telomere(ont)
        rows = karyotype_stats(ont)
        assert (row(rows, "Bands and Sub-bands").biological, row(rows, "Bands and Sub-bands").classes) == bands_oracle(dataset)

    def test_format(self):
        text = format_stats([StatsRow("Chromosome", 24, 27), StatsRow("Total", 24, 27)])
        assert text.splitlines() == [
            "Class Type  Biological Object  Number of Classes",
            "Chromosome  24                 27",
            "Total       24                 27",
        ]


class TestBandDataset:
    def test_parse(self):
        (entry,) = parse_band_dataset(json.dumps([{"chromosome": "X", "bands": ["p11", "p11.2", "p11.23"]}]))
        assert entry.chromosome == "X"
        assert [str(b) for b in entry.bands] == ["p11", "p11.2", "p11.23"]

    @pytest.mark.parametrize(
        "data",
        [
            {"chromosome": "1"},
            [{"chromosome": "1", "bands": ["p1"], "extra": 1}],
            [{"chromosome": "0", "bands": ["p1"]}],
            [{"chromosome": 1, "bands": ["p1"]}],
            [{"chromosome": "1", "bands": "p1"}],
            [{"chromosome": "1", "bands": ["p1", "p1"]}],
            [{"chromosome": "1", "bands": ["p1"]}, {"chromosome": "1", "bands": ["q1"]}],
            [{"chromosome": "1", "bands": ["z1"]}],
            [{"bands": ["p1"]}],
        ],
    )
    def test_invalid(self, data):
        with pytest.raises(ValueError):
            parse_band_dataset(json.dumps(data))

    def test_not_json(self):
        with pytest.raises(ValueError):
            parse_band_dataset("{")
