import pytest

from tauseq.fields import FieldSpec
from tauseq.quiver import Quiver, build_algebra


@pytest.fixture(scope="session")
def a2():
    q = Quiver(["1", "2"], [("a", "1", "2")])
    return build_algebra(q, FieldSpec(0))


@pytest.fixture(scope="session")
def a3():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return build_algebra(q, FieldSpec(0))


@pytest.fixture(scope="session")
def a3rad2():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return build_algebra(q, FieldSpec(0), [["a", "b"]])
