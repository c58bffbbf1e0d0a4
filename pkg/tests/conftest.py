import pytest

from binjson.value import load_canonical_doc, load_fixture


@pytest.fixture
def canonical_doc():
    return load_canonical_doc()


@pytest.fixture
def fixture():
    """Bytes of the golden fixture with the given extension."""
    return lambda ext: load_fixture(f"canonical.{ext}")
