import itertools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from sdscycle import graph_core as gc

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")


@st.composite
def graphs(draw, min_n=1, max_n=6, max_m=None, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_m)) if pairs else []
    y = gc.make_graph(n, chosen)
    if connected:
        # stitch components together along a path of representatives
        comps = gc.connected_components(y)
        reps = [min(c) for c in comps]
        for a, b in zip(reps, reps[1:]):
            y = gc.add_edge(y, (a, b))
    return y


@pytest.fixture
def rng():
    return np.random.default_rng(20241014)
