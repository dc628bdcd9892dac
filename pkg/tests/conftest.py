import pathlib

import pytest

from fanlab import corpus

CORPUS_DIR = pathlib.Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR


@pytest.fixture(scope="session")
def sq2():
    return corpus.sq2()


@pytest.fixture(scope="session")
def pent():
    return corpus.pent()


@pytest.fixture(scope="session")
def p2fan():
    return corpus.p2()


@pytest.fixture(scope="session")
def cp3():
    return corpus.cp3()


@pytest.fixture(scope="session")
def cp4():
    return corpus.cp4()


@pytest.fixture(scope="session")
def sq2xsq2():
    return corpus.sq2xsq2()


@pytest.fixture(scope="session")
def sq2xpent():
    return corpus.sq2xpent()
