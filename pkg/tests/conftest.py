import pathlib
import sys

import pytest

TESTS_DIR = pathlib.Path(__file__).parent
sys.path.insert(0, str(TESTS_DIR))


@pytest.fixture
def fixtures() -> pathlib.Path:
    return TESTS_DIR / "fixtures"


def load_fixture_program(name: str):
    from ordlp import parse_program

    source = (TESTS_DIR / "fixtures" / name).read_text()
    return parse_program(source)
