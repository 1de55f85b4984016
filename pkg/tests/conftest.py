import pytest

from greatcircles import arrangement, geometry


@pytest.fixture(scope="session")
def octahedron():
    return arrangement.build_graph(geometry.fixture_arrangement("octahedron"))


@pytest.fixture(scope="session")
def cuboctahedron():
    return arrangement.build_graph(geometry.fixture_arrangement("cuboctahedron"))


@pytest.fixture(scope="session")
def icosidodecahedron():
    return arrangement.build_graph(geometry.fixture_arrangement("icosidodecahedron"))
