import random

import pytest

from exmatch.graph import Graph


def pytest_addoption(parser):
    parser.addoption(
        "--long", action="store_true", default=False,
        help="also run the stretch targets (hours of CPU)",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "long: stretch targets, run with --long")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="stretch target; pass --long to run")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    adj = [0] * n
    for v in range(n):
        for u in range(v):
            if rng.random() < p:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return Graph(n, adj)
