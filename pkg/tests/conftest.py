from pathlib import Path

import pytest

from privlens.frontend import SourceFile, parse_file
from privlens.rules import compile_rules, load_default_rules

FIXTURE_DIR = Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURE_DIR / "corpus"
ANNOTATIONS = FIXTURE_DIR / "annotations.json"


@pytest.fixture(scope="session")
def default_spec():
    return load_default_rules()


@pytest.fixture(scope="session")
def rules(default_spec):
    return compile_rules(default_spec)


@pytest.fixture
def parse_js():
    def inner(src: str, path: str = "test.js"):
        return parse_file(SourceFile(path, src, "javascript"))

    return inner


@pytest.fixture
def parse_java():
    def inner(src: str, path: str = "Test.java"):
        return parse_file(SourceFile(path, src, "java"))

    return inner
