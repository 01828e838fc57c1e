import pytest

from catbn import benchmarks
from catbn.params_sim import ancestral_sample


@pytest.fixture(scope="session")
def chain_bn():
    return benchmarks.chain()


@pytest.fixture(scope="session")
def collider_bn():
    return benchmarks.collider()


@pytest.fixture(scope="session")
def tiered_bn():
    return benchmarks.tiered()


@pytest.fixture(scope="session")
def chain_50k(chain_bn):
    return ancestral_sample(chain_bn, 50_000, seed=11)


@pytest.fixture(scope="session")
def collider_50k(collider_bn):
    return ancestral_sample(collider_bn, 50_000, seed=12)


@pytest.fixture(scope="session")
def tiered_50k(tiered_bn):
    return ancestral_sample(tiered_bn, 50_000, seed=13)
