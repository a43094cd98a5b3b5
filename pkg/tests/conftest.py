import itertools
import json
import math
import os
from pathlib import Path

import numpy as np
import pytest

from topotensor.complex import SimplicialComplex

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("TOPOTENSOR_REGEN_GOLDEN") == "1"


def random_complex(rng, num_vertices=7, max_dim=2, tops=6):
    """Closure of a few random simplices of dimension <= max_dim."""
    simplices = []
    for _ in range(tops):
        k = int(rng.integers(0, max_dim + 1))
        simplices.append(rng.choice(num_vertices, size=k + 1, replace=False).tolist())
    return SimplicialComplex.from_simplices(num_vertices, simplices)


def triangle_boundary():
    return SimplicialComplex.from_simplices(3, [(0, 1), (1, 2), (0, 2)])


def filled_triangle():
    return SimplicialComplex.from_simplices(3, [(0, 1, 2)])


def tetrahedron_boundary():
    return SimplicialComplex.from_simplices(4, itertools.combinations(range(4), 3))


def two_filled_triangles():
    return SimplicialComplex.from_simplices(6, [(0, 1, 2), (3, 4, 5)])


def _close(a, b, rel):
    if isinstance(a, dict):
        return isinstance(b, dict) and a.keys() == b.keys() and all(_close(a[k], b[k], rel) for k in a)
    if isinstance(a, list):
        return isinstance(b, list) and len(a) == len(b) and all(_close(x, y, rel) for x, y in zip(a, b))
    if isinstance(a, float) or isinstance(b, float):
        return math.isclose(a, b, rel_tol=rel, abs_tol=1e-12)
    return a == b


@pytest.fixture
def golden():
    """``golden(name, value)`` compares with tests/golden/<name>.json (rel 1e-9).

    Set TOPOTENSOR_REGEN_GOLDEN=1 to rewrite the files from the current run.
    """

    def check(name, value, rel=1e-9):
        path = GOLDEN / f"{name}.json"
        value = json.loads(json.dumps(value))
        if REGEN:
            GOLDEN.mkdir(exist_ok=True)
            path.write_text(json.dumps(value, indent=1, sort_keys=True) + "\n")
        if not path.exists():
            pytest.fail(f"missing golden file {path.name}; rerun with TOPOTENSOR_REGEN_GOLDEN=1")
        expected = json.loads(path.read_text())
        assert _close(expected, value, rel), f"{name}: {value} != golden {expected}"

    return check


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
