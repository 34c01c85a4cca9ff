import pathlib

import pytest

from ggkit import parse_grammar

ROOT = pathlib.Path(__file__).resolve().parent.parent
GRAMMARS = ROOT / "grammars"
GOLDEN = pathlib.Path(__file__).resolve().parent / "golden"


def load(name):
    return parse_grammar((GRAMMARS / name).read_text())


@pytest.fixture(scope="session")
def example2():
    return load("example2.gg")


@pytest.fixture(scope="session")
def g_ab():
    return load("g_ab.gg")


@pytest.fixture(scope="session")
def g_reg():
    return load("g_reg.gg")


@pytest.fixture(scope="session")
def anbn_left():
    return load("anbn_left.gg")
