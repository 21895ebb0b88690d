import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from av_reference import AV, bijection  # noqa: E402

from argonto import compile_ontology, parse_ontology  # noqa: E402
from argonto.ontology import PriorityDecl  # noqa: E402

ACCEPTANCE_RESULTS: dict = {}


@pytest.fixture(scope="session")
def av_ontology():
    return parse_ontology(AV.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def av(av_ontology):
    """Pipeline with p2 < p1."""
    return compile_ontology(av_ontology, [PriorityDecl("p2", "p1")])


@pytest.fixture(scope="session")
def av_swapped(av_ontology):
    """Pipeline with p1 < p2."""
    return compile_ontology(av_ontology, [PriorityDecl("p1", "p2")])


@pytest.fixture(scope="session")
def av_map(av):
    return bijection(av.store)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
