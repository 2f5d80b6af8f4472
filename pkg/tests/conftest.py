import pytest

from latpoly import boolean, chain, m3, n5


@pytest.fixture(scope="session")
def chain2():
    return chain(2)


@pytest.fixture(scope="session")
def chain3():
    return chain(3)


@pytest.fixture(scope="session")
def chain4():
    return chain(4)


@pytest.fixture(scope="session")
def chain5():
    return chain(5)


@pytest.fixture(scope="session")
def b2():
    return boolean(2)


@pytest.fixture(scope="session")
def pentagon():
    return n5()


@pytest.fixture(scope="session")
def diamond():
    return m3()


CHAIN3_LAT = """\
lattice chain3
elements: 0 m 1
covers:
0 < m
m < 1
"""

N5_LAT = """\
lattice N5
elements: 0 a b c 1
covers:
0 < a
a < b
b < 1
0 < c
c < 1
"""


@pytest.fixture()
def chain3_file(tmp_path):
    path = tmp_path / "chain3.lat"
    path.write_text(CHAIN3_LAT)
    return path


@pytest.fixture()
def n5_file(tmp_path):
    path = tmp_path / "n5.lat"
    path.write_text(N5_LAT)
    return path
