from __future__ import annotations

from pathlib import Path

import pytest

from storymood import Agent, CatalogEntry, parse_scenario, validate_scenario

REPO_ROOT = Path(__file__).resolve().parent.parent
FIXTURES = REPO_ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

OTHELLO_PATH = FIXTURES / "othello.json"
HARRY_PATH = FIXTURES / "harry.json"
SCRIPTS = FIXTURES / "scripts"


@pytest.fixture(scope="session")
def othello_text() -> str:
    return OTHELLO_PATH.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def othello(othello_text):
    return parse_scenario(othello_text)


@pytest.fixture(scope="session")
def harry():
    return parse_scenario(HARRY_PATH.read_text(encoding="utf-8"))


def make_pair_scenario(affection_ab: int = 5, affection_ba: int = 5, event_value: int = 2):
    """Minimal two-agent scenario used by unit tests."""
    return validate_scenario(
        [Agent("ann", "Ann"), Agent("bob", "Bob")],
        [("ann", "bob", affection_ab), ("bob", "ann", affection_ba)],
        events=[CatalogEntry("nudge", "A nudge", event_value)],
        objects=[CatalogEntry("coin", "A coin", 3)],
        actions=[CatalogEntry("favor", "A favor", 4)],
    )
