import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from api.services.graph_core import build_forest


# v, v1, v2, v3, w1, a, b, c
EXAMPLE_1_LABELS = ["v", "v1", "v2", "v3", "w1", "a", "b", "c"]
EXAMPLE_1_EDGES = [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (4, 6), (4, 7)]

# v, v1, v2, w1, w2, a, b, c, d
EXAMPLE_2_LABELS = ["v", "v1", "v2", "w1", "w2", "a", "b", "c", "d"]
EXAMPLE_2_EDGES = [(0, 1), (0, 2), (2, 3), (2, 4), (3, 5), (5, 7), (5, 6), (7, 8)]


def edge_text(labels, edges) -> str:
    return "".join(f"{labels[u]} {labels[v]}\n" for u, v in edges)


@pytest.fixture
def example_1():
    return build_forest(len(EXAMPLE_1_LABELS), EXAMPLE_1_EDGES, EXAMPLE_1_LABELS)


@pytest.fixture
def example_2():
    return build_forest(len(EXAMPLE_2_LABELS), EXAMPLE_2_EDGES, EXAMPLE_2_LABELS)


@pytest.fixture
def example_1_text():
    return edge_text(EXAMPLE_1_LABELS, EXAMPLE_1_EDGES)


@pytest.fixture
def example_2_text():
    return edge_text(EXAMPLE_2_LABELS, EXAMPLE_2_EDGES)
