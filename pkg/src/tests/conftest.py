import io
import json
from typing import Callable

import pytest

import main
from algebra.graded_ring import GradedRingPresentation, parse_presentation


@pytest.fixture
def hirzebruch_0() -> GradedRingPresentation:
    """A*(P^1 x P^1), the projectivization of O + O on P^1."""
    return parse_presentation("Z[x,u1]/(x^2, u1^2)")


@pytest.fixture
def hirzebruch_1() -> GradedRingPresentation:
    """A*(P(O + O(1))) on P^1."""
    return parse_presentation("Z[x,u1]/(x^2, u1^2 - x*u1)")


@pytest.fixture
def hirzebruch_0_twisted() -> GradedRingPresentation:
    """A*(P(O(1) + O(1))) on P^1: the same ring as hirzebruch_0 in another basis."""
    return parse_presentation("Z[x,u1]/(x^2, u1^2 - 2*x*u1)")


@pytest.fixture
def run_cli() -> Callable[..., tuple[int, str]]:
    """
    Run the command line on a document (a dict, or raw text) and return the exit code and the
    standard output.
    """

    def run(*argv: str, document: dict | str | None = None) -> tuple[int, str]:
        if document is None:
            text = ""
        elif isinstance(document, str):
            text = document
        else:
            text = json.dumps(document)
        stdout = io.StringIO()
        code = main.run(list(argv), stdin=io.StringIO(text), stdout=stdout)
        return code, stdout.getvalue()

    return run
