"""
Shared fixtures: the small host graphs used across the suite and a cached
exact-profile lookup
"""
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from coverage_profile import profile_exact
from graph_core import Graph, named_graph


@lru_cache(maxsize=None)
def cached_profile(g, t):
    return profile_exact(g, t)


@pytest.fixture
def profile_of():
    return cached_profile


@pytest.fixture
def graph():
    return named_graph


@st.composite
def small_graphs(draw, min_n=1, max_n=8):
    """Hypothesis strategy: arbitrary labeled graphs on min_n..max_n vertices"""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, bit in zip(pairs, bits) if bit])
