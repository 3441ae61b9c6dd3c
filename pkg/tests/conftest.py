import pytest

from tnncells.coxeter import CoxeterSystem, coxeter_matrix, symmetric_group


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return str(tmp_path_factory.mktemp("tnn-cache"))


@pytest.fixture(scope="session")
def s2(cache_dir):
    return CoxeterSystem(coxeter_matrix("A1"), cache_dir=cache_dir)


@pytest.fixture(scope="session")
def s3(cache_dir):
    return CoxeterSystem(coxeter_matrix("A2"), cache_dir=cache_dir)


@pytest.fixture(scope="session")
def s4(cache_dir):
    return CoxeterSystem(coxeter_matrix("A3"), cache_dir=cache_dir)


@pytest.fixture(scope="session")
def s5(cache_dir):
    return CoxeterSystem(coxeter_matrix("A4"), cache_dir=cache_dir)


@pytest.fixture(scope="session")
def b3(cache_dir):
    return CoxeterSystem(coxeter_matrix("B3"), cache_dir=cache_dir)
