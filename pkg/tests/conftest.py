import numpy as np
import pytest

from levynoise import atomic_measure
from levynoise.prm import PointRealization


@pytest.fixture
def unit_atom():
    return atomic_measure([(1.0, 1.0)])


@pytest.fixture
def sym_two_atom():
    return atomic_measure([(1.0, 0.5), (-1.0, 0.5)])


@pytest.fixture
def skew_two_atom():
    return atomic_measure([(2.0, 1.0), (-1.0, 3.0)])


def make_realization(model, window, points):
    """Hand-built realization from (location, jump) pairs, atoms resolved."""
    points = sorted(points)
    xs = np.array([p[0] for p in points], dtype=float)
    zs = np.array([p[1] for p in points], dtype=float)
    atom = None
    if model.is_atomic:
        lookup = {z: j for j, (z, _) in enumerate(model.atoms)}
        atom = np.array([lookup[z] for z in zs], dtype=int) if len(zs) else np.empty(0, dtype=int)
    return PointRealization(float(window), xs, zs, atom, model)
