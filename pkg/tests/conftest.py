import pytest

from eecbias.corpus import generate_corpus
from eecbias.lexicons import load_lexicons
from eecbias.pairing import build_gender_comparisons, build_race_comparisons


@pytest.fixture(scope="session")
def lexicons():
    return load_lexicons()


@pytest.fixture(scope="session")
def corpus(lexicons):
    return generate_corpus(lexicons)


@pytest.fixture(scope="session")
def gender_units(corpus):
    return build_gender_comparisons(corpus)


@pytest.fixture(scope="session")
def race_units(corpus):
    return build_race_comparisons(corpus)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
