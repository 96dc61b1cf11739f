from __future__ import annotations

from pathlib import Path

import pytest

from ontoforge.owl import Iri, new_ontology

NS = "http://example.org/test#"

# criterion id -> (passed, description), filled by test_acceptance
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def ont():
    return new_ontology(Iri("http://example.org/", "test"), ns=NS)


def iri(name: str) -> Iri:
    return Iri(NS, name)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        passed, desc = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  AC{key}: {desc}")


GOLDEN = Path(__file__).parent / "golden"


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


def frames(text: str, *names: str) -> str:
    """The Manchester frames for ``names``, in the order given."""
    blocks: dict[str, str] = {}
    for block in text.split("\n\n"):
        head = block.strip().splitlines()[0] if block.strip() else ""
        keyword, _, name = head.partition(" ")
        if keyword.endswith(":") and name:
            blocks[name] = block.strip()
    return "\n\n".join(blocks[n] for n in names)
