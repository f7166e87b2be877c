import json
import os

import pytest

from resdecay import InitialState, PotentialSpec, build_solution

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def ref():
    """Frozen 50-digit reference values (tools/make_reference.py)."""
    with open(os.path.join(DATA_DIR, "reference.json")) as fh:
        return json.load(fh)


@pytest.fixture(scope="session")
def spec100():
    return PotentialSpec(lam=100.0, a=1.0)


@pytest.fixture(scope="session")
def sol_q1(spec100):
    """Full paper configuration, q = 1."""
    return build_solution(spec100, InitialState(q=1, a=1.0), n_poles=100)


@pytest.fixture(scope="session")
def sol_q2(spec100):
    """Full paper configuration, q = 2."""
    return build_solution(spec100, InitialState(q=2, a=1.0), n_poles=100)


@pytest.fixture(scope="session")
def sol_small(spec100):
    """Cheap truncation for unit tests that only need structure."""
    return build_solution(spec100, InitialState(q=1, a=1.0), n_poles=24)
