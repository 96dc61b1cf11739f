"""Parser, renderer and ontology compiler for a small subset of ISCN karyotype strings.

Accepted grammar::

    KARYO = 1*2DIGIT "," 1*4SEX *("," ABN)
    SEX   = "X" / "Y" / "N"
    ABN   = ("+" / "-") CHROM / "inv(" CHROM ")(" BAND BAND ")"
    CHROM = "1".."22" / "X" / "Y"
    BAND  = ("p" / "q") DIGITS ["." 1*2DIGIT]

The declared total must equal 44 autosomes plus the listed sex chromosomes,
adjusted by autosomal gains and losses. Sex-chromosome gains and losses are
already reflected in the sex list (``45,X,-Y`` lists the X that remains).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Union

from .karyotype import (
    CHROMOSOMES,
    SEX_CHROMOSOMES,
    Addition,
    BandName,
    Deletion,
    Inversion,
    KaryotypeEvent,
    band_name,
    base_karyotype,
    chromosome_name,
    karyotype_class,
)
from .owl import Iri, Named, Ontology, UndeclaredEntityError

__all__ = [
    "Gain",
    "Inv",
    "IscnArithmeticError",
    "IscnError",
    "IscnKaryotype",
    "IscnSyntaxError",
    "Loss",
    "UnknownChromosomeError",
    "iscn_to_ontology",
    "karyotype_name",
    "parse_iscn",
    "render_iscn",
]


class IscnError(ValueError):
    def __init__(self, message: str, offset: int | None = None) -> None:
        super().__init__(message if offset is None else f"{message} (at offset {offset})")
        self.offset = offset


class IscnSyntaxError(IscnError):
    pass


class UnknownChromosomeError(IscnError):
    pass


class IscnArithmeticError(IscnError):
    pass


@dataclass(frozen=True)
class Loss:
    chromosome: str

    def __str__(self) -> str:
        return f"-{self.chromosome}"


@dataclass(frozen=True)
class Gain:
    chromosome: str

    def __str__(self) -> str:
        return f"+{self.chromosome}"


@dataclass(frozen=True)
class Inv:
    chromosome: str
    band1: BandName
    band2: BandName

    def __str__(self) -> str:
        return f"inv({self.chromosome})({self.band1}{self.band2})"


Abnormality = Union[Loss, Gain, Inv]


@dataclass(frozen=True)
class IscnKaryotype:
    declared_total: int
    sex: tuple[str, ...]
    abnormalities: tuple[Abnormality, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "sex", tuple(self.sex))
        object.__setattr__(self, "abnormalities", tuple(self.abnormalities))
        if not 1 <= self.declared_total <= 99:
            raise ValueError(f"chromosome total out of range: {self.declared_total}")
        if not 1 <= len(self.sex) <= 4 or any(s not in "XYN" for s in self.sex):
            raise ValueError(f"sex designation must be 1-4 of X, Y, N: {self.sex!r}")
        for abn in self.abnormalities:
            if abn.chromosome not in CHROMOSOMES:
                raise ValueError(f"unknown chromosome {abn.chromosome!r}")

    def expected_total(self) -> int:
        total = 44 + len(self.sex)
        for abn in self.abnormalities:
            if abn.chromosome in SEX_CHROMOSOMES:
                continue
            if isinstance(abn, Gain):
                total += 1
            elif isinstance(abn, Loss):
                total -= 1
        return total


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def error(self, message: str, offset: int | None = None) -> IscnSyntaxError:
        return IscnSyntaxError(message, self.pos if offset is None else offset)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            found = self.peek() or "end of input"
            raise self.error(f"expected {literal!r}, found {found!r}")
        self.pos += len(literal)

    def digits(self, max_len: int | None = None) -> str:
        start = self.pos
        while self.peek().isdigit() and self.peek().isascii():
            self.pos += 1
            if max_len is not None and self.pos - start == max_len:
                break
        if self.pos == start:
            raise self.error("expected a digit")
        return self.text[start : self.pos]

    def karyotype(self) -> IscnKaryotype:
        start = self.pos
        total = self.digits(2)
        if total[0] == "0":
            raise self.error("chromosome total must not start with 0", start)
        self.expect(",")
        sex_start = self.pos
        while self.peek() and self.peek() in "XYN":
            self.pos += 1
        sex = self.text[sex_start : self.pos]
        if not sex:
            raise self.error("expected a sex chromosome designation (X, Y or N)")
        if len(sex) > 4:
            raise self.error("at most four sex chromosomes", sex_start)
        abnormalities = []
        while self.peek() == ",":
            self.pos += 1
            abnormalities.append(self.abnormality())
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.peek()!r}")
        return IscnKaryotype(int(total), tuple(sex), tuple(abnormalities))

    def chromosome(self) -> str:
        start = self.pos
        while self.peek().isascii() and self.peek().isalnum():
            self.pos += 1
        token = self.text[start : self.pos]
        if not token:
            raise self.error("expected a chromosome")
        if token not in CHROMOSOMES:
            raise UnknownChromosomeError(f"unknown chromosome {token!r}", start)
        return token

    def band(self) -> BandName:
        arm = self.peek()
        if arm not in ("p", "q"):
            raise self.error(f"expected band arm 'p' or 'q', found {arm or 'end of input'!r}")
        self.pos += 1
        whole = self.digits()
        if self.peek() == ".":
            self.pos += 1
            return BandName(arm, f"{whole}.{self.digits(2)}")
        return BandName(arm, whole)

    def abnormality(self) -> Abnormality:
        c = self.peek()
        if c in ("+", "-"):
            self.pos += 1
            chrom = self.chromosome()
            return Gain(chrom) if c == "+" else Loss(chrom)
        if self.text.startswith("inv(", self.pos):
            self.pos += 4
            chrom = self.chromosome()
            self.expect(")(")
            band1 = self.band()
            band2 = self.band()
            self.expect(")")
            return Inv(chrom, band1, band2)
        raise self.error(f"expected '+', '-' or 'inv(', found {c or 'end of input'!r}")


def parse_iscn(text: str | bytes) -> IscnKaryotype:
    """Parse ``text``; every failure is raised as an :class:`IscnError`."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("ascii")
        except UnicodeDecodeError as e:
            raise IscnSyntaxError("input is not ASCII", e.start) from None
    k = _Parser(text).karyotype()
    expected = k.expected_total()
    if expected != k.declared_total:
        raise IscnArithmeticError(
            f"declared total {k.declared_total} does not match the {expected} chromosomes implied "
            f"by the sex chromosomes and abnormalities"
        )
    return k


def render_iscn(k: IscnKaryotype) -> str:
    return ",".join([str(k.declared_total), "".join(k.sex), *map(str, k.abnormalities)])


def karyotype_name(k: IscnKaryotype) -> str:
    """Class name for a karyotype, e.g. ``k45_X_minusY`` for ``45,X,-Y``."""
    parts = [f"k{k.declared_total}", "".join(k.sex)]
    for abn in k.abnormalities:
        if isinstance(abn, Gain):
            parts.append(f"plus{abn.chromosome}")
        elif isinstance(abn, Loss):
            parts.append(f"minus{abn.chromosome}")
        else:
            parts.append(f"inv{abn.chromosome}_{abn.band1}{abn.band2}")
    return "_".join(parts)


def _sex_class(ont: Ontology, symbol: str) -> Iri:
    if symbol == "N":
        return ont.iri_for("HumanSexChromosome")
    return ont.iri_for(chromosome_name(symbol))


def _multiset_minus(a: Counter, b: Counter) -> list[str]:
    return sorted((a - b).elements())


def base_and_events(ont: Ontology, k: IscnKaryotype) -> tuple[str, list[KaryotypeEvent]]:
    """Choose the base karyotype and the events deriving ``k`` from it."""
    complement = Counter(k.sex)
    for abn in k.abnormalities:
        if abn.chromosome in SEX_CHROMOSOMES:
            if isinstance(abn, Loss):
                complement[abn.chromosome] += 1
            elif isinstance(abn, Gain) and complement[abn.chromosome] > 0:
                complement[abn.chromosome] -= 1
    size = sum(complement.values())
    if complement["N"] or size < 2:
        base = "XN"
    else:
        base = "XY" if complement["Y"] else "XX"
    base_set = Counter(base)

    raw: list[tuple[type, tuple[Iri, ...]]] = []
    for symbol in _multiset_minus(base_set, complement):
        raw.append((Deletion, (_sex_class(ont, symbol),)))
    for symbol in _multiset_minus(complement, base_set):
        raw.append((Addition, (_sex_class(ont, symbol),)))
    for abn in k.abnormalities:
        if isinstance(abn, Inv):
            bands = tuple(ont.iri_for(band_name(abn.chromosome, b)) for b in (abn.band1, abn.band2))
            for iri in bands:
                if not ont.is_class(iri):
                    raise UndeclaredEntityError(f"band class {iri.fragment} is not declared")
            raw.append((Inversion, bands))
        else:
            kind = Addition if isinstance(abn, Gain) else Deletion
            raw.append((kind, (ont.iri_for(chromosome_name(abn.chromosome)),)))

    # Repeated identical events become one restriction with a count.
    counts = Counter(raw)
    events = [kind(counts[(kind, args)], *args) for kind, args in dict.fromkeys(raw)]
    return base, events


def iscn_to_ontology(ont: Ontology, k: IscnKaryotype, name: str | None = None) -> Named:
    """Compile ``k`` into a karyotype class derived from its base karyotype."""
    ont.require(ont.iri_for("HumanSexChromosome"))
    base, events = base_and_events(ont, k)
    base_cls = base_karyotype(ont, base)
    name = name or karyotype_name(k)
    if name == base_cls.iri.fragment:
        if events:
            raise ValueError(f"{name} names a base karyotype but {render_iscn(k)} has events")
        return base_cls
    return karyotype_class(ont, name, base_cls.iri, events, label=f"The {render_iscn(k)} karyotype")
