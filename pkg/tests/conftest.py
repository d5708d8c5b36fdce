import json

import numpy as np
import pytest

from periframe import PeriodicGraph, PlacementParams, parse_graph


def _graph(doc: dict) -> PeriodicGraph:
    return parse_graph(json.dumps(doc))


@pytest.fixture
def square_lattice() -> PeriodicGraph:
    """One vertex orbit, two loop edges along the axes."""
    return _graph(
        {
            "d": 2,
            "n": 1,
            "edges": [
                {"tail": 0, "head": 0, "label": [1, 0]},
                {"tail": 0, "head": 0, "label": [0, 1]},
            ],
        }
    )


@pytest.fixture
def square_diagonal() -> PeriodicGraph:
    """Square lattice braced by a diagonal loop; generically rigid."""
    return _graph(
        {
            "d": 2,
            "n": 1,
            "edges": [
                {"tail": 0, "head": 0, "label": [1, 0]},
                {"tail": 0, "head": 0, "label": [0, 1]},
                {"tail": 0, "head": 0, "label": [1, 1]},
            ],
        }
    )


@pytest.fixture
def honeycomb() -> PeriodicGraph:
    """Two vertex orbits joined by three edges; hexagonal connectivity."""
    return _graph(
        {
            "d": 2,
            "n": 2,
            "edges": [
                {"tail": 0, "head": 1, "label": [0, 0]},
                {"tail": 0, "head": 1, "label": [1, 0]},
                {"tail": 0, "head": 1, "label": [0, 1]},
            ],
        }
    )


@pytest.fixture
def braced_pair() -> PeriodicGraph:
    """d=2, n=2, five edges with one loop: minimal edge count d*n + 1."""
    return _graph(
        {
            "d": 2,
            "n": 2,
            "edges": [
                {"tail": 0, "head": 1, "label": [0, 0]},
                {"tail": 0, "head": 1, "label": [1, 0]},
                {"tail": 0, "head": 1, "label": [0, 1]},
                {"tail": 0, "head": 1, "label": [1, 1]},
                {"tail": 0, "head": 0, "label": [1, 0]},
            ],
        }
    )


@pytest.fixture
def identity_params() -> PlacementParams:
    return PlacementParams(t=np.zeros((0, 2)), omega=np.eye(2))


@pytest.fixture
def honeycomb_params() -> PlacementParams:
    """Maximally symmetric equilateral placement: hexagonal Gram matrix,
    second vertex at the cell barycenter, all bars of squared length 2/3."""
    return PlacementParams(
        t=np.array([[-1.0 / 3.0, -1.0 / 3.0]]),
        omega=np.array([[2.0, 1.0], [1.0, 2.0]]),
    )


@pytest.fixture
def write_json(tmp_path):
    def writer(name: str, doc) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return writer
