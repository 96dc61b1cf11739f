"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 parse or build error, 3 validation findings.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from . import builds
from .functional import Format, SerializationConfig, Sort, read_functional_subset, to_functional
from .iscn import Gain, IscnError, Loss, parse_iscn
from .karyotype import format_stats, karyotype_stats
from .manchester import to_manchester
from .owl import Iri, Ontology, OntologyError
from .patterns import check_closure
from .sio import audit_annotations

EXIT_USAGE = 1
EXIT_ERROR = 2
EXIT_FINDINGS = 3


class BuildError(click.ClickException):
    exit_code = EXIT_ERROR


def _fail_on_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (ValueError, OntologyError, OSError) as e:
            raise BuildError(str(e)) from e

    return wrapper


def output_options(default_format: str = "functional"):
    def decorate(fn):
        fn = click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), help="Write here instead of stdout.")(fn)
        fn = click.option("--sort", type=click.Choice([s.value for s in Sort]), default=Sort.INSERTION.value, show_default=True)(fn)
        fn = click.option(
            "--format", "fmt", type=click.Choice([f.value for f in Format]), default=default_format, show_default=True
        )(fn)
        return fn

    return decorate


def emit(ont: Ontology, fmt: str, sort: str, output: Path | None, use_labels: bool = False) -> None:
    cfg = SerializationConfig(Format(fmt), Sort(sort), use_labels)
    text = to_functional(ont, cfg) if cfg.format is Format.FUNCTIONAL else to_manchester(ont, cfg)
    if output is None:
        click.echo(text, nl=False)
    else:
        output.write_text(text, encoding="utf-8", newline="\n")


@click.group()
def cli() -> None:
    """Pattern-driven OWL ontology builds."""


@cli.group()
def pizza() -> None:
    """Pizza exemplar."""


@pizza.command("build")
@click.option("--pizzas", type=click.Path(exists=True, dir_okay=False), help="Named pizza flat file.")
@output_options()
@_fail_on_errors
def pizza_build(pizzas, fmt, sort, output) -> None:
    """Scaffold, toppings, spiciness partition and named pizzas."""
    emit(builds.build_pizza(pizzas), fmt, sort, output)


@cli.group()
def karyotype() -> None:
    """Human chromosome model."""


@karyotype.command("build")
@click.option("--bands", type=click.Path(exists=True, dir_okay=False), help="Band dataset (JSON).")
@output_options()
@_fail_on_errors
def karyotype_build(bands, fmt, sort, output) -> None:
    """Scaffold, bands from the dataset, and centromeres/telomeres for all 24 chromosomes."""
    emit(builds.build_karyotype(bands), fmt, sort, output)


@cli.group("iscn")
def iscn_group() -> None:
    """ISCN karyotype strings."""


@iscn_group.command("compile")
@click.argument("text")
@click.option("--name", help="Class name; derived from the string by default.")
@click.option("--bands", type=click.Path(exists=True, dir_okay=False), help="Band dataset for inversions.")
@output_options(default_format="manchester")
@_fail_on_errors
def iscn_compile(text, name, bands, fmt, sort, output) -> None:
    """Compile TEXT into a karyotype class and print its fragment."""
    ont, cls = builds.build_iscn(text, name, bands)
    emit(ont.fragment([cls.iri]), fmt, sort, output)


def _abnormality_json(abn) -> dict:
    if isinstance(abn, (Gain, Loss)):
        return {"type": "gain" if isinstance(abn, Gain) else "loss", "chromosome": abn.chromosome}
    return {"type": "inversion", "chromosome": abn.chromosome, "band1": str(abn.band1), "band2": str(abn.band2)}


@iscn_group.command("check")
@click.argument("text")
def iscn_check(text) -> None:
    """Parse TEXT and print its structure as JSON."""
    try:
        k = parse_iscn(text)
    except IscnError as e:
        raise BuildError(f"{type(e).__name__}: {e}") from e
    click.echo(
        json.dumps(
            {
                "declared_total": k.declared_total,
                "sex": list(k.sex),
                "abnormalities": [_abnormality_json(a) for a in k.abnormalities],
            }
        )
    )


@cli.group()
def sio() -> None:
    """SIO construction patterns."""


@sio.command("demo")
@click.option("--atoms", type=click.Path(exists=True, dir_okay=False), help="Atom list (JSON).")
@click.option("--labels/--no-labels", default=False, help="Manchester only: show entities by label.")
@output_options()
@_fail_on_errors
def sio_demo(atoms, labels, fmt, sort, output) -> None:
    """Scaffold, sio-class examples, a pathway and atoms."""
    emit(builds.build_sio_demo(atoms), fmt, sort, output, use_labels=labels)


def _read(path: str) -> Ontology:
    return read_functional_subset(Path(path).read_text(encoding="utf-8"))


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@_fail_on_errors
def stats(file) -> None:
    """Chromosome model statistics for a Functional Syntax FILE."""
    click.echo(format_stats(karyotype_stats(_read(file))), nl=False)


def resolve_iri(ont: Ontology, text: str) -> Iri:
    if text.startswith("<") and text.endswith(">"):
        return Iri.parse(text[1:-1])
    if "://" in text:
        return Iri.parse(text)
    prefix, sep, local = text.partition(":")
    if sep:
        if prefix and prefix not in ont.prefixes:
            raise click.BadParameter(f"unknown prefix {prefix!r}")
        return Iri(ont.prefixes[prefix] if prefix else ont.ns, local)
    return ont.iri_for(text)


@cli.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--require-closure", is_flag=True, help="Universal restrictions must close over the existentials.")
@click.option("--require-annotation", "required", multiple=True, metavar="IRI", help="Annotation property every class needs.")
@click.option("--scope", metavar="IRI", help="Only audit classes below this one.")
@_fail_on_errors
def validate(file, require_closure, required, scope) -> None:
    """Audit a Functional Syntax FILE; exit 3 when anything is found."""
    ont = _read(file)
    findings: list[str] = []
    if require_closure:
        findings += [str(f) for f in check_closure(ont)]
    if required:
        props = [resolve_iri(ont, r) for r in required]
        found = audit_annotations(ont, props, resolve_iri(ont, scope) if scope else None)
        findings += [str(f) for f in found]
    for line in findings:
        click.echo(line)
    if findings:
        sys.exit(EXIT_FINDINGS)


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="ontoforge", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return EXIT_USAGE
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return EXIT_USAGE
    except click.exceptions.Exit as e:
        return e.exit_code
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
