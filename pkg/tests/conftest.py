import pytest
from httpx import ASGITransport, AsyncClient

from src.index import app
from src.services.graph import Graph
from src.services.patterns import cycle, petersen, wheel
from src.types import Config


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def perfect_matching(n: int) -> Graph:
    return Graph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


@pytest.fixture
def cfg():
    return Config()


@pytest.fixture
def petersen_graph():
    return petersen()


@pytest.fixture
def w4():
    return wheel(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
async def client():
    transport = ASGITransport(app=app)
    async with AsyncClient(transport=transport, base_url="http://test") as c:
        yield c
