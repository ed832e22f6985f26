import time

import pytest

from pchar.config import Config
from pchar.corpus import TableCache, default_corpus_path
from pchar.descriptors import parse_descriptor


@pytest.fixture(scope="session")
def cfg() -> Config:
    return Config()


@pytest.fixture(scope="session")
def session_cache(cfg) -> TableCache:
    # base_dir points at the shipped corpus so file: descriptors resolve
    return TableCache(cfg, base_dir=default_corpus_path().parent)


@pytest.fixture(scope="session")
def q8_table(session_cache):
    return session_cache.table(parse_descriptor("file:groups/q8.perm"))


@pytest.fixture(scope="session")
def h27_table(session_cache):
    return session_cache.table(parse_descriptor("extraspecial:3,2"))


@pytest.fixture(scope="session")
def timed_example31(session_cache):
    """(table, elapsed_seconds) for the p=3, m=1 example group."""
    t0 = time.perf_counter()
    table = session_cache.table(parse_descriptor("example:3,1"))
    return table, time.perf_counter() - t0


@pytest.fixture(scope="session")
def timed_example51(session_cache):
    """(table, elapsed_seconds) for the p=5, m=1 example group (order 15625)."""
    t0 = time.perf_counter()
    table = session_cache.table(parse_descriptor("example:5,1"))
    return table, time.perf_counter() - t0
