import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cycleturan.hypergraph import Hypergraph, complete_hypergraph  # noqa: E402

# v_1..v_8 mapped to 0..7; e_i = {v_{2i-2}, v_{2i-1}, v_{2i}} with v_0 = v_8
C34_EDGES = [(7, 0, 1), (1, 2, 3), (3, 4, 5), (5, 6, 7)]
C34_WITNESS = (0, 1, 2, 3, 4, 5, 6, 7)


@pytest.fixture
def c34():
    return Hypergraph(8, 3, C34_EDGES)


@pytest.fixture
def k4():
    return complete_hypergraph(4, 2)


@pytest.fixture
def k5():
    return complete_hypergraph(5, 2)
