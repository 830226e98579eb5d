from __future__ import annotations

import pytest

from qreals import named_source
from qreals.cli import load_fixture


@pytest.fixture(scope="session")
def streams():
    """Replayable term streams for the bundled constants."""
    return {
        "phi": named_source("phi"),
        "silver": named_source("silver"),
        "sqrt2": named_source("sqrt:2"),
        "sqrt3": named_source("sqrt:3"),
        "sqrt5": named_source("sqrt:5"),
        "sqrt7": named_source("sqrt:7"),
        "e": named_source("e"),
        "pi": named_source("pi"),
    }


@pytest.fixture(scope="session")
def reference():
    """name -> (min_degree, coefficient list) for the bundled expansions."""
    names = ["qrat_7_5", "phi6", "phi8", "phi9", "phi", "silver", "sqrt2",
             "sqrt3", "sqrt5", "sqrt7", "e", "pi", "neg_sqrt2", "neg_sqrt7",
             "neg_pi"]
    return {name: load_fixture(name) for name in names}
