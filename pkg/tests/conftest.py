import os

import pytest

from bellgraph.search import iso_class_reps

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

KNOWN_CLASS_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156}


@pytest.fixture(scope="session")
def census():
    """Isomorphism-class representatives for n = 1..6, counts pinned."""
    out = {}
    for n, expected in KNOWN_CLASS_COUNTS.items():
        reps = iso_class_reps(n)
        assert len(reps) == expected, f"n={n}: {len(reps)} classes, expected {expected}"
        out[n] = reps
    return out


@pytest.fixture(scope="session")
def census5_path():
    return os.path.join(DATA_DIR, "census5.g6")
