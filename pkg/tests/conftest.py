import itertools

import pytest

from gossipfp import fixtures
from gossipfp.designs import FANO
from gossipfp.gossip import from_design, full_gossip, square_gossip
from gossipfp.repro import appendix_code, example431_code


def disjoint_count(blocks, subset):
    """Oracle: blocks sharing no point with ``subset``, counted directly."""
    s = set(subset)
    return sum(1 for b in blocks if not s & set(b))


def pair_counts(blocks, t):
    """Oracle: how many blocks contain each t-subset, by plain enumeration."""
    counts = {}
    for b in blocks:
        for sub in itertools.combinations(sorted(b), t):
            counts[sub] = counts.get(sub, 0) + 1
    return counts


def is_t_design(blocks, v, t, lam):
    counts = pair_counts(blocks, t)
    return all(counts.get(s, 0) == lam for s in itertools.combinations(range(1, v + 1), t))


@pytest.fixture(scope="session")
def fano_code():
    return from_design(FANO)


@pytest.fixture(scope="session")
def appendix():
    return appendix_code("development")


@pytest.fixture(scope="session")
def code431():
    return example431_code()


@pytest.fixture(scope="session")
def code_battery(fano_code, appendix):
    return {
        "example211": fano_code,
        "gossip21": appendix,
        "square5": square_gossip(5),
        "full53": full_gossip(5, 3),
    }


@pytest.fixture(scope="session")
def example211_matrix():
    return fixtures.matrix(fixtures.EXAMPLE_211)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
