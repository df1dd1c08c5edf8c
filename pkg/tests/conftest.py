import pytest

DEFAULT_SEED = 20240601


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED,
                     help=f"seed for the randomized generators (default {DEFAULT_SEED})")


@pytest.fixture(scope="session")
def seed(request):
    return request.config.getoption("--seed")
